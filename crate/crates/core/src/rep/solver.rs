//! Alternating projections between the affine set `A + B + C = gamma I` and
//! the product of the three unitary orbits with prescribed spectra.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::{from_eigen, hermitian_eigen, random_unitary, CMat, C64};
use super::{target_spectra, StarRep};
use crate::bridge::{AlgebraParams, GenDim};
use crate::error::Result;
use crate::par::{self, Execution};
use crate::rational::{self, Q};

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub seed: u64,
    pub tol: f64,
    pub max_restarts: u64,
    pub max_iterations: usize,
    /// A restart is abandoned when its residual improves by less than
    /// `stall_delta` over `stall_window` iterations.
    pub stall_window: usize,
    pub stall_delta: f64,
    pub exec: Execution,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            tol: 1e-10,
            max_restarts: 32,
            max_iterations: 100_000,
            stall_window: 100,
            stall_delta: 1e-14,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub rep: StarRep,
    pub residual: f64,
    pub iterations: usize,
    /// Index of the successful restart; rerunning with the same seed
    /// reproduces it.
    pub restart: u64,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)] // returned once per solve
pub enum SolveOutcome {
    Found(Solved),
    /// The trace of the relation cannot balance: exact certificate that no
    /// representation of this generalized dimension exists.
    Infeasible {
        trace_defect: Q,
    },
    /// Restart budget exhausted. Not evidence of non-existence.
    NotFound {
        restarts: u64,
        best_residual: f64,
    },
}

#[derive(Debug, Clone, Copy, Serialize)]
struct Attempt {
    residual: f64,
    iterations: usize,
    converged: bool,
}

pub fn solve_representation(p: &AlgebraParams, n: &GenDim, opts: &SolveOptions) -> Result<SolveOutcome> {
    let spectra = target_spectra(p, n)?;
    let defect = p.trace_defect(n)?;
    if defect != Q::from_integer(0.into()) {
        return Ok(SolveOutcome::Infeasible { trace_defect: defect });
    }
    // eigenvalue lists with multiplicity, descending
    let targets: [Vec<f64>; 3] =
        spectra.map(|fam| fam.iter().flat_map(|(x, m)| std::iter::repeat_n(rational::to_f64(x), *m)).collect());
    let gamma = rational::to_f64(&p.gamma);
    let attempts = std::sync::Mutex::new(Vec::new());
    let found = par::find_first(opts.exec, opts.max_restarts, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(r);
        let (bases, attempt) = run(&targets, gamma, n.n0, opts, &mut rng);
        attempts.lock().unwrap().push(attempt.residual);
        attempt.converged.then_some((bases, attempt))
    });
    Ok(match found {
        Some((restart, (bases, attempt))) => {
            let families = [0, 1, 2].map(|b| split_families(&bases[b], n.branch(b)));
            SolveOutcome::Found(Solved {
                rep: StarRep { params: p.clone(), gendim: n.clone(), families },
                residual: attempt.residual,
                iterations: attempt.iterations,
                restart,
            })
        }
        None => SolveOutcome::NotFound {
            restarts: opts.max_restarts,
            best_residual: attempts.into_inner().unwrap().into_iter().fold(f64::INFINITY, f64::min),
        },
    })
}

/// One restart. Returns the final eigenbases (columns sorted to match the
/// descending targets).
fn run(
    targets: &[Vec<f64>; 3],
    gamma: f64,
    n0: usize,
    opts: &SolveOptions,
    rng: &mut ChaCha8Rng,
) -> ([CMat; 3], Attempt) {
    let mut bases = [0, 1, 2].map(|_| random_unitary(n0, rng));
    let mut x = [0, 1, 2].map(|b| from_eigen(&targets[b], &bases[b]));
    let shift = CMat::identity(n0, n0) * C64::from(gamma);
    let mut history = Vec::with_capacity(opts.max_iterations.min(1 << 16));
    let mut residual = f64::INFINITY;
    for it in 0..opts.max_iterations {
        let excess = (&x[0] + &x[1] + &x[2] - &shift) * C64::from(1.0 / 3.0);
        let mut spectral = 0.0;
        for b in 0..3 {
            let y = &x[b] - &excess;
            let (_, vecs) = hermitian_eigen(&y);
            x[b] = from_eigen(&targets[b], &vecs);
            spectral += (&y - &x[b]).norm();
            bases[b] = vecs;
        }
        let affine = (&x[0] + &x[1] + &x[2] - &shift).norm();
        residual = affine + spectral;
        if residual < opts.tol {
            return (bases, Attempt { residual, iterations: it + 1, converged: true });
        }
        history.push(residual);
        if it >= opts.stall_window && history[it - opts.stall_window] - residual < opts.stall_delta {
            return (bases, Attempt { residual, iterations: it + 1, converged: false });
        }
    }
    (bases, Attempt { residual, iterations: opts.max_iterations, converged: false })
}

/// `P_i = V_i V_i*` for consecutive column blocks of sizes `ranks`.
fn split_families(basis: &CMat, ranks: &[usize]) -> Vec<CMat> {
    let mut start = 0;
    ranks
        .iter()
        .map(|&r| {
            let v = basis.columns(start, r);
            start += r;
            v * v.adjoint()
        })
        .collect()
}
