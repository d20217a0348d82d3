//! Deciding whether parameters admit an irreducible non-degenerate
//! representation, two independent ways:
//!
//! * [`decide_generic`] unwinds every non-degenerate dimension of the graph
//!   against the character of the parameters;
//! * [`decide_catalog`] evaluates the closed-form inequality systems in
//!   [`catalog`].
//!
//! [`cross_validate`] samples parameters and compares the two.

pub mod catalog;

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bridge::{self, AlgebraParams, GenDim};
use crate::coxeter::{self, GVector, OrbitEntry};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rational::{self, q, qi, Q};
use crate::star_graph::StarGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Generic,
    Catalog,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub gendim: GenDim,
    pub dim: GVector,
    /// Unwinding length (generic method only).
    pub steps: Option<usize>,
    /// Catalog case id such as `E7.2` (catalog method only).
    pub case: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipDecision {
    pub member: bool,
    pub witnesses: Vec<Witness>,
    pub method: Method,
    /// Violated condition ids of every unsatisfied case (catalog method only).
    pub failed_conditions: Vec<String>,
}

impl MembershipDecision {
    pub fn gendims(&self) -> BTreeSet<GenDim> {
        self.witnesses.iter().map(|w| w.gendim.clone()).collect()
    }
}

fn require_dynkin(g: &StarGraph) -> Result<()> {
    if g.classify().is_finite() {
        Ok(())
    } else {
        Err(Error::NotDynkin(g.to_string()))
    }
}

pub fn decide_generic(p: &AlgebraParams, g: &StarGraph) -> Result<MembershipDecision> {
    require_dynkin(g)?;
    let dims = coxeter::enumerate_nondegenerate_dims(g)?;
    decide_generic_with(p, g, &dims)
}

/// [`decide_generic`] against a precomputed list of non-degenerate dimensions.
pub fn decide_generic_with(p: &AlgebraParams, g: &StarGraph, dims: &[OrbitEntry]) -> Result<MembershipDecision> {
    generic_with_routes(p, g, dims).map(|(d, _)| d)
}

/// The decision plus whether, for every dimension, the two unwinding routes
/// succeeded or failed together.
fn generic_with_routes(p: &AlgebraParams, g: &StarGraph, dims: &[OrbitEntry]) -> Result<(MembershipDecision, bool)> {
    let f = bridge::params_to_character(p, g)?;
    let mut witnesses = Vec::new();
    let mut routes_agree = true;
    for entry in dims {
        let report = coxeter::unwind(g, &entry.dim, &f)?;
        routes_agree &= report.routes[0].succeeded() == report.routes[1].succeeded();
        if let Some(route) = report.witness() {
            witnesses.push(Witness {
                gendim: bridge::dim_to_generalized(&entry.dim, g)?,
                dim: entry.dim.clone(),
                steps: Some(route.steps),
                case: None,
            });
        }
    }
    let decision = MembershipDecision {
        member: !witnesses.is_empty(),
        witnesses,
        method: Method::Generic,
        failed_conditions: vec![],
    };
    Ok((decision, routes_agree))
}

/// How the user's branches map onto a catalogue's canonical branches:
/// canonical branch `c` is the user's branch `perm[c]`.
fn catalog_for(g: &StarGraph) -> Result<(&'static catalog::CompiledCatalog, [usize; 3])> {
    let lengths = g.branch_lengths();
    for cat in catalog::compiled() {
        for perm in PERMUTATIONS {
            if perm.iter().enumerate().all(|(c, &u)| lengths[u] == cat.lengths[c]) {
                return Ok((cat, perm));
            }
        }
    }
    Err(Error::NotCatalogued(g.to_string()))
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 0, 1], [1, 2, 0], [2, 1, 0]];

pub fn decide_catalog(p: &AlgebraParams, g: &StarGraph) -> Result<MembershipDecision> {
    let (cat, perm) = catalog_for(g)?;
    if p.lengths() != g.branch_lengths() {
        return Err(Error::ShapeMismatch(format!("parameter lengths {:?} vs graph {}", p.lengths(), g)));
    }
    let weights = [p.branch(perm[0]), p.branch(perm[1]), p.branch(perm[2])];
    let mut witnesses = Vec::new();
    let mut failed = Vec::new();
    for case in &cat.cases {
        let violated: Vec<&str> =
            case.conditions.iter().filter(|c| !c.holds(weights, &p.gamma)).map(|c| c.id.as_str()).collect();
        if violated.is_empty() {
            let mut branches: [Vec<usize>; 3] = Default::default();
            for (c, &u) in perm.iter().enumerate() {
                branches[u] = case.gendim.branch(c).to_vec();
            }
            let [n_p, n_q, n_s] = branches;
            let gendim = GenDim::new(case.gendim.n0, n_p, n_q, n_s);
            let dim = bridge::generalized_to_dim(&gendim, g)?;
            witnesses.push(Witness { gendim, dim, steps: None, case: Some(case.id.clone()) });
        } else {
            failed.extend(violated.into_iter().map(String::from));
        }
    }
    Ok(MembershipDecision {
        member: !witnesses.is_empty(),
        witnesses,
        method: Method::Catalog,
        failed_conditions: failed,
    })
}

/// Smallest slack `lhs - rhs` over the strict inequalities of catalogue case
/// `case_id`, or `None` if its equality does not hold exactly. A positive
/// margin means the case is satisfied.
pub fn case_margin(p: &AlgebraParams, g: &StarGraph, case_id: &str) -> Result<Option<Q>> {
    let (cat, perm) = catalog_for(g)?;
    if p.lengths() != g.branch_lengths() {
        return Err(Error::ShapeMismatch(format!("parameter lengths {:?} vs graph {}", p.lengths(), g)));
    }
    let case = cat
        .cases
        .iter()
        .find(|c| c.id == case_id)
        .ok_or_else(|| Error::NotCatalogued(format!("{g}: no case {case_id}")))?;
    let weights = [p.branch(perm[0]), p.branch(perm[1]), p.branch(perm[2])];
    let (eq, ineqs) = case.conditions.split_first().expect("every case has an equality");
    if !eq.holds(weights, &p.gamma) {
        return Ok(None);
    }
    Ok(ineqs.iter().map(|c| c.slack(weights, &p.gamma)).min())
}

/// The catalogue case ids for a graph, in order, with their generalized
/// dimensions expressed in the graph's own branch order.
pub fn catalog_cases(g: &StarGraph) -> Result<Vec<(String, GenDim)>> {
    let (cat, perm) = catalog_for(g)?;
    Ok(cat
        .cases
        .iter()
        .map(|case| {
            let mut branches: [Vec<usize>; 3] = Default::default();
            for (c, &u) in perm.iter().enumerate() {
                branches[u] = case.gendim.branch(c).to_vec();
            }
            let [a, b, c] = branches;
            (case.id.clone(), GenDim::new(case.gendim.n0, a, b, c))
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub index: u64,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub delta: Vec<String>,
    pub gamma: String,
    pub generic: Vec<GenDim>,
    pub catalog: Vec<GenDim>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossValidationReport {
    pub graph: String,
    pub samples: u64,
    pub seed: u64,
    pub on_trace_surface: u64,
    pub members: u64,
    /// Samples with more than one witness (agreed by both deciders).
    pub multi_witness: u64,
    /// Samples where both unwinding routes succeed or fail together.
    pub route_agreement: u64,
    pub disagreements: Vec<Disagreement>,
}

struct SampleOutcome {
    on_surface: bool,
    member: bool,
    multi: bool,
    routes_agree: bool,
    disagreement: Option<Disagreement>,
}

/// Random positive strictly decreasing list with denominator `den`.
fn random_weights(rng: &mut ChaCha8Rng, len: usize, den: i64) -> Vec<Q> {
    let mut picks = BTreeSet::new();
    while picks.len() < len {
        picks.insert(rng.random_range(1..=12 * den));
    }
    picks.into_iter().rev().map(|x| q(x, den)).collect()
}

/// Parameter tuple for sample `index`. Odd indices are placed on the trace
/// surface of a randomly chosen non-degenerate dimension by solving for
/// gamma, since free sampling hits that hyperplane with probability zero.
pub fn sample_params(g: &StarGraph, gendims: &[GenDim], seed: u64, index: u64) -> (AlgebraParams, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let den = [1, 2, 3, 4, 6][rng.random_range(0..5)];
    let [k, l, m] = g.branch_lengths();
    let alpha = random_weights(&mut rng, k, den);
    let beta = random_weights(&mut rng, l, den);
    let delta = random_weights(&mut rng, m, den);
    let on_surface = index % 2 == 1 && !gendims.is_empty();
    let gamma = if on_surface {
        let n = &gendims[rng.random_range(0..gendims.len())];
        let zero_gamma =
            AlgebraParams { alpha: alpha.clone(), beta: beta.clone(), delta: delta.clone(), gamma: Q::zero() };
        let weighted = zero_gamma.trace_defect(n).expect("shapes agree");
        weighted / qi(n.n0 as i64)
    } else {
        q(rng.random_range(1..=36 * den), den)
    };
    let p = AlgebraParams::new(alpha, beta, delta, gamma).expect("sampler produces valid parameters");
    (p, on_surface)
}

fn check_sample(
    g: &StarGraph,
    dims: &[OrbitEntry],
    gendims: &[GenDim],
    seed: u64,
    index: u64,
) -> Result<SampleOutcome> {
    let (p, on_surface) = sample_params(g, gendims, seed, index);
    let (generic, routes_agree) = generic_with_routes(&p, g, dims)?;
    let catalog = decide_catalog(&p, g)?;
    let (a, b) = (generic.gendims(), catalog.gendims());
    let agree = generic.member == catalog.member && a == b;
    let disagreement = (!agree).then(|| Disagreement {
        index,
        alpha: rational::format_list(&p.alpha),
        beta: rational::format_list(&p.beta),
        delta: rational::format_list(&p.delta),
        gamma: rational::format(&p.gamma),
        generic: a.into_iter().collect(),
        catalog: b.into_iter().collect(),
    });
    Ok(SampleOutcome {
        on_surface,
        member: generic.member,
        multi: generic.witnesses.len() > 1,
        routes_agree,
        disagreement,
    })
}

pub fn cross_validate(g: &StarGraph, samples: u64, seed: u64) -> Result<CrossValidationReport> {
    cross_validate_with(g, samples, seed, Execution::default())
}

pub fn cross_validate_with(g: &StarGraph, samples: u64, seed: u64, exec: Execution) -> Result<CrossValidationReport> {
    catalog_for(g)?;
    let dims = coxeter::enumerate_nondegenerate_dims_with(g, exec)?;
    let gendims: Vec<GenDim> = dims.iter().map(|e| bridge::dim_to_generalized(&e.dim, g)).collect::<Result<_>>()?;
    let outcomes = par::map_indices(exec, samples, |i| check_sample(g, &dims, &gendims, seed, i));
    let mut report = CrossValidationReport {
        graph: g.to_string(),
        samples,
        seed,
        on_trace_surface: 0,
        members: 0,
        multi_witness: 0,
        route_agreement: 0,
        disagreements: vec![],
    };
    for o in outcomes {
        let o = o?;
        report.on_trace_surface += o.on_surface as u64;
        report.members += o.member as u64;
        report.multi_witness += o.multi as u64;
        report.route_agreement += o.routes_agree as u64;
        report.disagreements.extend(o.disagreement);
    }
    Ok(report)
}
