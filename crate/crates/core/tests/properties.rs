use std::collections::BTreeSet;

use proptest::prelude::*;
use star_spectra::bridge::{self, character_to_params, dim_to_generalized, generalized_to_dim, params_to_character};
use star_spectra::coxeter::{self, coxeter_map, reflect, tits_form};
use star_spectra::membership::{decide_catalog, decide_generic};
use star_spectra::rational::{self, q, qi};
use star_spectra::{AlgebraParams, GVector, GenDim, Parity, StarGraph};

const FINITE: [(i64, i64, i64); 8] =
    [(1, 1, 1), (1, 1, 2), (1, 1, 4), (2, 2, 1), (2, 3, 1), (2, 4, 1), (1, 2, 2), (3, 1, 2)];

fn finite_graph() -> impl Strategy<Value = StarGraph> {
    prop::sample::select(FINITE.to_vec()).prop_map(|(k, l, m)| StarGraph::new(k, l, m).unwrap())
}

fn any_graph() -> impl Strategy<Value = StarGraph> {
    (1i64..5, 1i64..5, 1i64..5).prop_map(|(k, l, m)| StarGraph::new(k, l, m).unwrap())
}

fn vector_for(g: &StarGraph) -> impl Strategy<Value = GVector> {
    prop::collection::vec(-20i64..20, g.vertex_count()).prop_map(|xs| GVector::from_ints(&xs))
}

fn decreasing(len: usize) -> impl Strategy<Value = Vec<rational::Q>> {
    prop::collection::btree_set(1i64..60, len).prop_map(|s| s.into_iter().rev().map(|x| q(x, 4)).collect())
}

/// Positive roots as the closure of the simple roots under "add a simple
/// root and stay on the unit level set of the Tits form".
fn positive_roots(g: &StarGraph) -> BTreeSet<Vec<i64>> {
    let n = g.vertex_count();
    let q_form = |x: &[i64]| {
        let mut s: i64 = x.iter().map(|t| t * t).sum();
        for (u, v) in g.edges() {
            s -= x[u] * x[v];
        }
        s
    };
    let mut roots: BTreeSet<Vec<i64>> = (0..n).map(|v| (0..n).map(|u| i64::from(u == v)).collect()).collect();
    let mut frontier: Vec<Vec<i64>> = roots.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for v in 0..n {
            let mut y = x.clone();
            y[v] += 1;
            if q_form(&y) == 1 && roots.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    roots
}

fn nondegenerate(g: &StarGraph, d: &[i64]) -> bool {
    (0..3).all(|b| {
        let vals: Vec<i64> = g.branch(b).map(|v| d[v]).collect();
        vals[0] > 0 && vals.windows(2).all(|w| w[0] < w[1]) && *vals.last().unwrap() < d[0]
    })
}

#[test]
fn orbit_vectors_are_exactly_the_positive_roots() {
    for ((k, l, m), count) in [((1, 1, 1), 12), ((2, 2, 1), 36), ((2, 3, 1), 63), ((2, 4, 1), 120), ((1, 1, 3), 30)] {
        let g = StarGraph::new(k, l, m).unwrap();
        let roots = positive_roots(&g);
        assert_eq!(roots.len(), count, "{g}");
        assert_eq!(g.classify().positive_root_count(), Some(count));
        let orbit: BTreeSet<Vec<i64>> =
            coxeter::positive_orbit_vectors(&g).unwrap().iter().map(|v| v.to_ints().unwrap()).collect();
        assert_eq!(orbit, roots, "{g}");

        let expected: BTreeSet<Vec<i64>> = roots.into_iter().filter(|d| nondegenerate(&g, d)).collect();
        let got: BTreeSet<Vec<i64>> =
            coxeter::enumerate_nondegenerate_dims(&g).unwrap().iter().map(|e| e.dim.to_ints().unwrap()).collect();
        assert_eq!(got, expected, "{g}");
    }
}

proptest! {
    #[test]
    fn reflections_are_involutions_preserving_the_form((g, x) in any_graph().prop_flat_map(|g| { let s = vector_for(&g); (Just(g), s) }), v in 0usize..13) {
        let v = v % g.vertex_count();
        let y = reflect(&g, v, &x).unwrap();
        prop_assert_eq!(reflect(&g, v, &y).unwrap(), x.clone());
        prop_assert_eq!(tits_form(&g, &y), tits_form(&g, &x));
        for p in [Parity::Odd, Parity::Even] {
            let z = coxeter_map(&g, p, &x).unwrap();
            prop_assert_eq!(coxeter_map(&g, p, &z).unwrap(), x.clone());
            prop_assert_eq!(tits_form(&g, &z), tits_form(&g, &x));
        }
    }

    #[test]
    fn coxeter_element_has_order_h((g, x) in finite_graph().prop_flat_map(|g| { let s = vector_for(&g); (Just(g), s) })) {
        let h = g.classify().coxeter_number.unwrap();
        let mut y = x.clone();
        for _ in 0..h {
            y = coxeter_map(&g, Parity::Odd, &coxeter_map(&g, Parity::Even, &y).unwrap()).unwrap();
        }
        prop_assert_eq!(y, x);
    }

    #[test]
    fn params_character_roundtrip(
        (g, p) in any_graph().prop_flat_map(|g| {
            let [k, l, m] = g.branch_lengths();
            (Just(g), decreasing(k), decreasing(l), decreasing(m), 1i64..200)
        }).prop_map(|(g, a, b, d, gam)| (g, AlgebraParams::new(a, b, d, q(gam, 3)).unwrap()))
    ) {
        let f = params_to_character(&p, &g).unwrap();
        prop_assert!(f.is_positive());
        prop_assert_eq!(character_to_params(&f, &g).unwrap(), p);
    }

    #[test]
    fn dim_gendim_roundtrip(
        (g, ranks, extra) in any_graph().prop_flat_map(|g| {
            let [k, l, m] = g.branch_lengths();
            (Just(g), (prop::collection::vec(1usize..4, k), prop::collection::vec(1usize..4, l), prop::collection::vec(1usize..4, m)), 1usize..4)
        })
    ) {
        let (a, b, c) = ranks;
        let n0 = [&a, &b, &c].iter().map(|r| r.iter().sum::<usize>()).max().unwrap() + extra;
        let n = GenDim::new(n0, a, b, c);
        prop_assert!(n.is_nondegenerate());
        let d = generalized_to_dim(&n, &g).unwrap();
        prop_assert!(coxeter::is_nondegenerate_dim(&g, &d));
        prop_assert_eq!(dim_to_generalized(&d, &g).unwrap(), n);
    }

    #[test]
    fn rational_strings_roundtrip(p in -10_000i64..10_000, d in 1i64..10_000) {
        let x = q(p, d);
        let s = rational::format(&x);
        prop_assert_eq!(rational::parse(&s).unwrap(), x);
        prop_assert!(s.contains('/'));
    }

    #[test]
    fn members_satisfy_the_trace_identity(
        g in prop::sample::select(vec![(1i64, 1i64, 1i64), (2, 2, 1), (2, 3, 1), (2, 4, 1)]).prop_map(|(k, l, m)| StarGraph::new(k, l, m).unwrap()),
        seed in 0u64..1000, index in 0u64..64,
    ) {
        let gendims: Vec<GenDim> = coxeter::enumerate_nondegenerate_dims(&g).unwrap().iter()
            .map(|e| bridge::dim_to_generalized(&e.dim, &g).unwrap()).collect();
        let (p, _) = star_spectra::membership::sample_params(&g, &gendims, seed, index);
        let generic = decide_generic(&p, &g).unwrap();
        for w in &generic.witnesses {
            prop_assert_eq!(p.trace_defect(&w.gendim).unwrap(), qi(0));
        }
        prop_assert_eq!(generic.gendims(), decide_catalog(&p, &g).unwrap().gendims());
    }

    #[test]
    fn membership_is_invariant_under_branch_permutation(seed in 0u64..500, index in 0u64..32) {
        let g = StarGraph::new(2, 3, 1).unwrap();
        let gendims: Vec<GenDim> = coxeter::enumerate_nondegenerate_dims(&g).unwrap().iter()
            .map(|e| bridge::dim_to_generalized(&e.dim, &g).unwrap()).collect();
        let (p, _) = star_spectra::membership::sample_params(&g, &gendims, seed, index);
        // (beta, delta, alpha) on T(3,1,2)
        let h = StarGraph::new(3, 1, 2).unwrap();
        let ph = AlgebraParams::new(p.beta.clone(), p.delta.clone(), p.alpha.clone(), p.gamma.clone()).unwrap();
        let a = decide_generic(&p, &g).unwrap();
        let b = decide_generic(&ph, &h).unwrap();
        prop_assert_eq!(a.member, b.member);
        let rotate = |n: &GenDim| GenDim::new(n.n0, n.n_q.clone(), n.n_s.clone(), n.n_p.clone());
        prop_assert_eq!(a.gendims().iter().map(rotate).collect::<BTreeSet<_>>(), b.gendims());
        prop_assert_eq!(decide_catalog(&ph, &h).unwrap().gendims(), b.gendims());
    }
}
