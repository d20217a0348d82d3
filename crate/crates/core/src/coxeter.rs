//! Reflections and Coxeter maps on G-vectors, enumeration of non-degenerate
//! dimensions, and the unwinding existence test.
//!
//! Everything here is exact rational arithmetic.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rational::{self, qi, Q};
use crate::star_graph::{StarGraph, Vertex};

pub use crate::star_graph::Parity;

/// One exact rational per vertex, in canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GVector(pub Vec<Q>);

impl GVector {
    pub fn zeros(n: usize) -> GVector {
        GVector(vec![Q::zero(); n])
    }

    pub fn simple(n: usize, v: Vertex) -> GVector {
        let mut x = GVector::zeros(n);
        x.0[v] = qi(1);
        x
    }

    pub fn from_ints(xs: &[i64]) -> GVector {
        GVector(xs.iter().map(|&x| qi(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: Vertex) -> &Q {
        &self.0[v]
    }

    /// `x != 0` and every coordinate `>= 0`.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative()) && self.0.iter().any(|x| !x.is_zero())
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|x| x.is_negative())
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(v, _)| v)
    }

    /// Strictly positive at every vertex where `d` is nonzero.
    pub fn is_positive_on_support_of(&self, d: &GVector) -> bool {
        d.support().all(|v| self.0[v].is_positive())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// `Some(v)` when this is the simple vector `e_v`.
    pub fn as_simple(&self) -> Option<Vertex> {
        let mut support = self.support();
        let v = support.next()?;
        (support.next().is_none() && self.0[v] == qi(1)).then_some(v)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational::to_f64).collect()
    }

    /// Integer coordinates; `None` if any is non-integral or out of range.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None }).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        rational::format_list(&self.0)
    }

    fn check(&self, g: &StarGraph) -> Result<()> {
        if self.len() == g.vertex_count() {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: g.vertex_count(), got: self.len() })
        }
    }
}

impl fmt::Display for GVector {
    /// `(x0; x1, x2, ...)`, integers without denominators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &Q| if x.is_integer() { x.numer().to_string() } else { x.to_string() };
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            match i {
                0 => write!(f, "{}", show(x))?,
                1 => write!(f, "; {}", show(x))?,
                _ => write!(f, ", {}", show(x))?,
            }
        }
        write!(f, ")")
    }
}

fn reflected_value(g: &StarGraph, v: Vertex, x: &GVector) -> Q {
    let mut s = -x.0[v].clone();
    for &u in g.neighbors(v) {
        s += &x.0[u];
    }
    s
}

/// Reflection at a single vertex: `x_v <- -x_v + sum of neighbours`.
pub fn reflect(g: &StarGraph, v: Vertex, x: &GVector) -> Result<GVector> {
    x.check(g)?;
    g.check_vertex(v)?;
    let mut out = x.clone();
    out.0[v] = reflected_value(g, v, x);
    Ok(out)
}

/// Simultaneous reflection at every vertex of parity `p`.
pub fn coxeter_map(g: &StarGraph, p: Parity, d: &GVector) -> Result<GVector> {
    d.check(g)?;
    let mut out = d.clone();
    for v in g.vertices_of(p) {
        out.0[v] = reflected_value(g, v, d);
    }
    Ok(out)
}

/// Reflection of the character `f` at the vertices of parity `p` inside the
/// support of the dimension `d`; every other coordinate is carried over.
pub fn char_map(g: &StarGraph, p: Parity, d: &GVector, f: &GVector) -> Result<GVector> {
    d.check(g)?;
    f.check(g)?;
    let mut out = f.clone();
    for v in g.vertices_of(p) {
        if !d.0[v].is_zero() {
            out.0[v] = reflected_value(g, v, f);
        }
    }
    Ok(out)
}

/// The quadratic (Tits) form `sum x_v^2 - sum_{edges} x_u x_v`.
pub fn tits_form(g: &StarGraph, x: &GVector) -> Q {
    let mut s: Q = x.0.iter().map(|t| t * t).sum();
    for (u, v) in g.edges() {
        s -= &x.0[u] * &x.0[v];
    }
    s
}

/// Dimension conditions for a non-degenerate graph representation: positive
/// integers, strictly increasing along each branch towards the center, every
/// branch head below the center value.
pub fn is_nondegenerate_dim(g: &StarGraph, d: &GVector) -> bool {
    if d.len() != g.vertex_count() || !d.is_integral() {
        return false;
    }
    (0..3).all(|b| {
        let mut prev = Q::zero();
        for v in g.branch(b) {
            if d.0[v] <= prev {
                return false;
            }
            prev = d.0[v].clone();
        }
        prev < d.0[0]
    })
}

/// Where an orbit vector was first seen: start vertex, parity of the first
/// map applied, and number of maps applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrbitOrigin {
    pub start: Vertex,
    pub first: Parity,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitEntry {
    pub dim: GVector,
    pub origins: Vec<OrbitOrigin>,
}

impl OrbitEntry {
    pub fn shortest(&self) -> OrbitOrigin {
        *self.origins.iter().min_by_key(|o| (o.steps, o.start, o.first)).expect("non-empty")
    }
}

/// Result of running every alternating sequence from every simple vector.
#[derive(Debug, Clone)]
pub struct Orbits {
    /// Every non-negative vector visited, with all the ways it was reached.
    pub visited: BTreeMap<GVector, Vec<OrbitOrigin>>,
    /// Longest run before leaving the positive cone or repeating.
    pub longest_run: usize,
}

fn finite_cap(g: &StarGraph) -> Result<usize> {
    g.classify().positive_root_count().ok_or_else(|| Error::NotDynkin(g.to_string()))
}

fn run_from(g: &StarGraph, start: Vertex, first: Parity, cap: usize) -> Result<Vec<(GVector, OrbitOrigin)>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut x = GVector::simple(g.vertex_count(), start);
    let mut p = first;
    let mut steps = 0;
    loop {
        if x.has_negative() || !seen.insert(x.clone()) {
            return Ok(out);
        }
        out.push((x.clone(), OrbitOrigin { start, first, steps }));
        if steps == cap {
            return Err(Error::OrbitCapExceeded { cap });
        }
        x = coxeter_map(g, p, &x)?;
        p = p.flip();
        steps += 1;
    }
}

pub fn orbits(g: &StarGraph, exec: Execution) -> Result<Orbits> {
    let cap = finite_cap(g)?;
    let n = g.vertex_count();
    let runs = par::map_indices(exec, 2 * n as u64, |i| {
        let start = (i / 2) as usize;
        let first = if i % 2 == 0 { Parity::Odd } else { Parity::Even };
        run_from(g, start, first, cap)
    });
    let mut visited: BTreeMap<GVector, Vec<OrbitOrigin>> = BTreeMap::new();
    let mut longest_run = 0;
    for run in runs {
        let run = run?;
        longest_run = longest_run.max(run.len().saturating_sub(1));
        for (x, origin) in run {
            visited.entry(x).or_default().push(origin);
        }
    }
    for origins in visited.values_mut() {
        origins.sort();
    }
    Ok(Orbits { visited, longest_run })
}

/// Every non-degenerate dimension of an irreducible locally-scalar
/// representation, sorted, each with the sequences that reach it.
pub fn enumerate_nondegenerate_dims(g: &StarGraph) -> Result<Vec<OrbitEntry>> {
    enumerate_nondegenerate_dims_with(g, Execution::default())
}

pub fn enumerate_nondegenerate_dims_with(g: &StarGraph, exec: Execution) -> Result<Vec<OrbitEntry>> {
    let orbits = orbits(g, exec)?;
    Ok(orbits
        .visited
        .into_iter()
        .filter(|(d, _)| is_nondegenerate_dim(g, d))
        .map(|(dim, origins)| OrbitEntry { dim, origins })
        .collect())
}

/// One attempt of the unwinding, starting with maps of parity `first`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnwindRoute {
    pub first: Parity,
    pub steps: usize,
    /// Vertex `v` when the dimension reached the simple vector `e_v`.
    pub terminal: Option<Vertex>,
    pub final_dim: GVector,
    pub final_character: GVector,
    /// `None` on success.
    pub failure: Option<String>,
}

impl UnwindRoute {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnwindReport {
    pub member: bool,
    /// Both attempts, odd-first then even-first.
    pub routes: [UnwindRoute; 2],
}

impl UnwindReport {
    /// The successful route with the fewest steps.
    pub fn witness(&self) -> Option<&UnwindRoute> {
        self.routes.iter().filter(|r| r.succeeded()).min_by_key(|r| r.steps)
    }

    pub fn failure_reason(&self) -> Option<String> {
        if self.member {
            return None;
        }
        Some(
            self.routes
                .iter()
                .map(|r| format!("{}-first: {}", r.first, r.failure.as_deref().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("; "),
        )
    }
}

fn unwind_route(g: &StarGraph, d: &GVector, f: &GVector, first: Parity, cap: usize) -> Result<UnwindRoute> {
    let mut d = d.clone();
    let mut f = f.clone();
    let mut p = first;
    let mut steps = 0;
    let finish = |d: GVector, f: GVector, steps, terminal, failure| UnwindRoute {
        first,
        steps,
        terminal,
        final_dim: d,
        final_character: f,
        failure,
    };
    loop {
        if let Some(v) = d.as_simple() {
            let failure = if !f.0[v].is_zero() {
                Some(format!("terminal character at g{v} is {} (must be 0)", rational::format(&f.0[v])))
            } else if let Some(u) = g.vertices().find(|&u| u != v && !f.0[u].is_positive()) {
                Some(format!("terminal character at g{u} is {} (must be > 0)", rational::format(&f.0[u])))
            } else {
                None
            };
            return Ok(finish(d, f, steps, Some(v), failure));
        }
        if steps == cap {
            let reason = format!("no simple vector within {cap} steps");
            return Ok(finish(d, f, steps, None, Some(reason)));
        }
        let blocked = d.support().find(|&u| g.parity(u) == p && !f.0[u].is_positive());
        if let Some(u) = blocked {
            let reason = format!(
                "step {}: character at {p} vertex g{u} is {} (must be > 0)",
                steps + 1,
                rational::format(&f.0[u])
            );
            return Ok(finish(d, f, steps, None, Some(reason)));
        }
        f = char_map(g, p.flip(), &d, &f)?;
        d = coxeter_map(g, p, &d)?;
        steps += 1;
        if d.has_negative() {
            let reason = format!("step {steps}: dimension left the positive cone");
            return Ok(finish(d, f, steps, None, Some(reason)));
        }
        p = p.flip();
    }
}

/// Backward alternation of the dimension and character maps from `(d, f)`
/// down to a simple vector `e_v`. The pair is realised by an irreducible
/// locally-scalar representation iff at the end `f(v) = 0` and `f > 0`
/// elsewhere. Both starting parities are tried.
pub fn unwind(g: &StarGraph, d: &GVector, f: &GVector) -> Result<UnwindReport> {
    d.check(g)?;
    f.check(g)?;
    let cap = finite_cap(g)?;
    if !is_nondegenerate_dim(g, d) || tits_form(g, d) != qi(1) {
        return Err(Error::DegenerateDimension(d.to_string()));
    }
    if !f.is_positive_on_support_of(d) {
        return Err(Error::CharacterNotPositive(f.to_string()));
    }
    let odd = unwind_route(g, d, f, Parity::Odd, cap)?;
    let even = unwind_route(g, d, f, Parity::Even, cap)?;
    Ok(UnwindReport { member: odd.succeeded() || even.succeeded(), routes: [odd, even] })
}

/// Positive root count check helper for callers that only need the set of
/// non-negative orbit vectors.
pub fn positive_orbit_vectors(g: &StarGraph) -> Result<BTreeSet<GVector>> {
    Ok(orbits(g, Execution::default())?.visited.into_keys().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn e6() -> StarGraph {
        StarGraph::new(2, 2, 1).unwrap()
    }

    #[test]
    fn reflect_examples() {
        let d4 = StarGraph::new(1, 1, 1).unwrap();
        let x = GVector::simple(4, 0);
        assert_eq!(reflect(&d4, 0, &x).unwrap(), GVector::from_ints(&[-1, 0, 0, 0]));

        let g = e6();
        let x = GVector::from_ints(&[3, 1, 2, 1, 2, 1]);
        assert_eq!(reflect(&g, 5, &x).unwrap(), GVector::from_ints(&[3, 1, 2, 1, 2, 2]));
        assert_eq!(reflect(&g, 5, &reflect(&g, 5, &x).unwrap()).unwrap(), x);
        assert!(matches!(reflect(&g, 6, &x), Err(Error::UnknownVertex { .. })));
        assert!(matches!(reflect(&g, 0, &GVector::zeros(3)), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn coxeter_map_examples() {
        let g = e6();
        let e0 = GVector::simple(6, 0);
        assert_eq!(coxeter_map(&g, Parity::Even, &e0).unwrap(), GVector::from_ints(&[1, 0, 1, 0, 1, 1]));
        // odd . even . odd . even applied to e_{g0}
        let mut x = e0.clone();
        for p in [Parity::Even, Parity::Odd, Parity::Even, Parity::Odd] {
            x = coxeter_map(&g, p, &x).unwrap();
        }
        assert_eq!(x, GVector::from_ints(&[3, 1, 2, 1, 2, 1]));
        for p in [Parity::Even, Parity::Odd] {
            let y = coxeter_map(&g, p, &x).unwrap();
            assert_eq!(coxeter_map(&g, p, &y).unwrap(), x);
        }
    }

    #[test]
    fn coxeter_map_equals_composed_reflections() {
        let g = StarGraph::new(2, 4, 1).unwrap();
        let x = GVector((0..8).map(|i| q(i * 7 - 11, 3)).collect());
        for p in [Parity::Even, Parity::Odd] {
            let mut y = x.clone();
            for v in g.vertices_of(p).collect::<Vec<_>>().into_iter().rev() {
                y = reflect(&g, v, &y).unwrap();
            }
            assert_eq!(coxeter_map(&g, p, &x).unwrap(), y);
        }
    }

    #[test]
    fn char_map_examples() {
        let d4 = StarGraph::new(1, 1, 1).unwrap();
        let f = GVector(vec![q(3, 2), q(1, 1), q(2, 3), q(1, 4)]);
        assert_eq!(char_map(&d4, Parity::Even, &GVector::zeros(4), &f).unwrap(), f);
        let d = GVector::from_ints(&[2, 1, 1, 1]);
        let got = char_map(&d4, Parity::Even, &d, &f).unwrap();
        assert_eq!(got, GVector(vec![q(3, 2), q(1, 2), q(5, 6), q(5, 4)]));
        assert_eq!(char_map(&d4, Parity::Even, &d, &got).unwrap(), f);
        // outside the support nothing moves
        let d = GVector::from_ints(&[2, 1, 0, 1]);
        let got = char_map(&d4, Parity::Even, &d, &f).unwrap();
        assert_eq!(got.0[2], q(2, 3));
    }

    #[test]
    fn d4_orbit() {
        let g = StarGraph::new(1, 1, 1).unwrap();
        let dims = enumerate_nondegenerate_dims(&g).unwrap();
        assert_eq!(dims.len(), 1);
        assert_eq!(dims[0].dim, GVector::from_ints(&[2, 1, 1, 1]));
    }

    #[test]
    fn e6_orbit_and_steps() {
        let g = e6();
        let dims = enumerate_nondegenerate_dims(&g).unwrap();
        let got: Vec<_> = dims.iter().map(|e| e.dim.clone()).collect();
        assert_eq!(got, vec![GVector::from_ints(&[3, 1, 2, 1, 2, 1]), GVector::from_ints(&[3, 1, 2, 1, 2, 2])]);
        let from_center =
            |e: &OrbitEntry| e.origins.iter().find(|o| o.start == 0 && o.first == Parity::Even).map(|o| o.steps);
        assert_eq!(from_center(&dims[0]), Some(4));
        assert_eq!(from_center(&dims[1]), Some(5));
    }

    #[test]
    fn e7_orbit_contains_paper_vector() {
        let g = StarGraph::new(2, 3, 1).unwrap();
        let dims = enumerate_nondegenerate_dims(&g).unwrap();
        assert_eq!(dims.len(), 3);
        let target = GVector::from_ints(&[4, 1, 2, 1, 2, 3, 2]);
        let entry = dims.iter().find(|e| e.dim == target).expect("present");
        assert!(entry.origins.iter().any(|o| o.start == 0 && o.first == Parity::Even && o.steps == 6));
    }

    #[test]
    fn d5_has_no_nondegenerate_dims() {
        let g = StarGraph::new(1, 1, 2).unwrap();
        assert!(enumerate_nondegenerate_dims(&g).unwrap().is_empty());
    }

    #[test]
    fn non_dynkin_is_rejected() {
        let g = StarGraph::new(2, 2, 2).unwrap();
        assert!(matches!(enumerate_nondegenerate_dims(&g), Err(Error::NotDynkin(_))));
    }

    #[test]
    fn unwind_d4_symbolic_example() {
        let g = StarGraph::new(1, 1, 1).unwrap();
        let d = GVector::from_ints(&[2, 1, 1, 1]);
        let (a, b, c) = (q(1, 1), q(5, 4), q(3, 4));
        let gamma = (&a + &b + &c) / q(2, 1);
        let f = GVector(vec![gamma.clone(), a.clone(), b.clone(), c.clone()]);
        let report = unwind(&g, &d, &f).unwrap();
        assert!(report.member);
        let odd = &report.routes[0];
        assert_eq!(odd.steps, 2);
        assert_eq!(odd.terminal, Some(0));
        let two = q(2, 1);
        let expected = GVector(vec![&two * &gamma - &a - &b - &c, &gamma - &a, &gamma - &b, &gamma - &c]);
        assert_eq!(odd.final_character, expected);
        // the even-first route also reaches a leaf
        assert!(report.routes[1].succeeded());

        let f = GVector(vec![q(2, 1), a, b, c]);
        let report = unwind(&g, &d, &f).unwrap();
        assert!(!report.member);
        assert!(report.failure_reason().unwrap().contains("must be 0"));
    }

    #[test]
    fn unwind_e6_examples() {
        let g = e6();
        let d = GVector::from_ints(&[3, 1, 2, 1, 2, 1]);
        let f = GVector(vec![q(5, 2), q(1, 1), q(2, 1), q(1, 1), q(2, 1), q(3, 2)]);
        let report = unwind(&g, &d, &f).unwrap();
        assert!(report.member);
        let w = report.witness().unwrap();
        assert_eq!(w.steps, 4);
        assert_eq!(w.terminal, Some(0));

        let mut f3 = f.clone();
        f3.0[0] = q(3, 1);
        assert!(!unwind(&g, &d, &f3).unwrap().member);
    }

    #[test]
    fn unwind_rejects_bad_input() {
        let g = e6();
        let f = GVector::from_ints(&[1, 1, 1, 1, 1, 1]);
        let bad_d = GVector::from_ints(&[3, 2, 1, 1, 2, 1]);
        assert!(matches!(unwind(&g, &bad_d, &f), Err(Error::DegenerateDimension(_))));
        let d = GVector::from_ints(&[3, 1, 2, 1, 2, 1]);
        let f = GVector::from_ints(&[1, 1, 1, 0, 1, 1]);
        assert!(matches!(unwind(&g, &d, &f), Err(Error::CharacterNotPositive(_))));
    }
}
