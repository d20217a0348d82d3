use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use star_spectra::coxeter::enumerate_nondegenerate_dims_with;
use star_spectra::membership::cross_validate_with;
use star_spectra::rational::{q, qi};
use star_spectra::rep::{solve_representation, SolveOptions};
use star_spectra::{AlgebraParams, Execution, GenDim, StarGraph};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn orbits(c: &mut Criterion) {
    let g = StarGraph::new(2, 4, 1).unwrap();
    let mut group = c.benchmark_group("orbit_enumeration_e8");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_nondegenerate_dims_with(&g, exec).unwrap())
        });
    }
    group.finish();
}

fn cross_validation(c: &mut Criterion) {
    let g = StarGraph::new(2, 3, 1).unwrap();
    let mut group = c.benchmark_group("cross_validate_e7_500");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| cross_validate_with(&g, 500, 1, exec).unwrap())
        });
    }
    group.finish();
}

fn solver_restarts(c: &mut Criterion) {
    // trace-balanced, but alpha_1 > gamma makes it infeasible, so every
    // restart runs until it stalls or hits its cap
    let p = AlgebraParams::from_ints(&[4, 1], &[3, 2], &[1], q(11, 3)).unwrap();
    let n = GenDim::new(3, vec![1, 1], vec![1, 1], vec![1]);
    assert_eq!(p.trace_defect(&n).unwrap(), qi(0));
    let mut group = c.benchmark_group("solver_8_restarts");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = SolveOptions { max_restarts: 8, max_iterations: 2_000, exec, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| solve_representation(&p, &n, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, orbits, cross_validation, solver_restarts);
criterion_main!(benches);
