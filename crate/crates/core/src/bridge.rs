//! Translation between algebra data (weights, generalized dimensions) and
//! graph data (characters, dimension vectors).
//!
//! All formulas are branch-local. Along a branch of length `k` we index
//! vertices by their distance `j` from the head (`j = 0` is adjacent to the
//! center). The graph-side space at distance `j` is the direct sum of the
//! ranges of the projections `p_i` for `i` in the window `[1 + ceil(j/2),
//! k - floor(j/2)]`: summands are dropped alternately from the left and the
//! right as one walks away from the center.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::coxeter::{self, GVector};
use crate::error::{Error, Result};
use crate::rational::{self, qi, Q};
use crate::star_graph::StarGraph;

/// Weights `(alpha, beta, delta)` of the three projection families and the
/// scalar `gamma`. Each weight list is positive and strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    pub alpha: Vec<Q>,
    pub beta: Vec<Q>,
    pub delta: Vec<Q>,
    pub gamma: Q,
}

impl AlgebraParams {
    pub fn new(alpha: Vec<Q>, beta: Vec<Q>, delta: Vec<Q>, gamma: Q) -> Result<AlgebraParams> {
        for (name, list) in [("alpha", &alpha), ("beta", &beta), ("delta", &delta)] {
            if list.is_empty() {
                return Err(Error::InvalidParams(format!("{name} is empty")));
            }
            if !list.iter().all(|x| x.is_positive()) {
                return Err(Error::InvalidParams(format!("{name} has a non-positive entry")));
            }
            if !list.windows(2).all(|w| w[0] > w[1]) {
                return Err(Error::InvalidParams(format!("{name} is not strictly decreasing")));
            }
        }
        if !gamma.is_positive() {
            return Err(Error::InvalidParams("gamma must be positive".into()));
        }
        Ok(AlgebraParams { alpha, beta, delta, gamma })
    }

    pub fn from_ints(alpha: &[i64], beta: &[i64], delta: &[i64], gamma: Q) -> Result<AlgebraParams> {
        let conv = |xs: &[i64]| xs.iter().map(|&x| qi(x)).collect();
        AlgebraParams::new(conv(alpha), conv(beta), conv(delta), gamma)
    }

    pub fn branch(&self, b: usize) -> &[Q] {
        match b {
            0 => &self.alpha,
            1 => &self.beta,
            2 => &self.delta,
            _ => panic!("branch index {b} out of range"),
        }
    }

    pub fn lengths(&self) -> [usize; 3] {
        [self.alpha.len(), self.beta.len(), self.delta.len()]
    }

    fn check(&self, g: &StarGraph) -> Result<()> {
        if self.lengths() == g.branch_lengths() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("parameter lengths {:?} do not match graph {}", self.lengths(), g)))
        }
    }

    /// `sum alpha_i n_i + sum beta_j n_j + sum delta_d n_d - gamma n0`.
    /// Zero is necessary for a representation in generalized dimension `n`
    /// (trace of the defining relation).
    pub fn trace_defect(&self, n: &GenDim) -> Result<Q> {
        if self.lengths() != n.lengths() {
            return Err(Error::ShapeMismatch(format!(
                "parameter lengths {:?} vs generalized dimension lengths {:?}",
                self.lengths(),
                n.lengths()
            )));
        }
        let mut s = -(&self.gamma * qi(n.n0 as i64));
        for b in 0..3 {
            for (w, &m) in self.branch(b).iter().zip(n.branch(b)) {
                s += w * qi(m as i64);
            }
        }
        Ok(s)
    }
}

/// `(n0; n_p; n_q; n_s)`: the dimension of the space and the rank of every
/// projection, indexed like the weights (`n_p[0]` is the rank of the
/// projection weighted by `alpha_1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GenDim {
    pub n0: usize,
    pub n_p: Vec<usize>,
    pub n_q: Vec<usize>,
    pub n_s: Vec<usize>,
}

impl GenDim {
    pub fn new(n0: usize, n_p: Vec<usize>, n_q: Vec<usize>, n_s: Vec<usize>) -> GenDim {
        GenDim { n0, n_p, n_q, n_s }
    }

    pub fn branch(&self, b: usize) -> &[usize] {
        match b {
            0 => &self.n_p,
            1 => &self.n_q,
            2 => &self.n_s,
            _ => panic!("branch index {b} out of range"),
        }
    }

    pub fn lengths(&self) -> [usize; 3] {
        [self.n_p.len(), self.n_q.len(), self.n_s.len()]
    }

    /// All ranks positive and no family summing to the whole space.
    pub fn is_nondegenerate(&self) -> bool {
        self.n0 > 0
            && (0..3).all(|b| {
                let br = self.branch(b);
                !br.is_empty() && br.iter().all(|&x| x > 0) && br.iter().sum::<usize>() < self.n0
            })
    }

    /// Each branch listed far vertex first (reverse weight order), which is
    /// how tables of generalized dimensions are usually printed against the
    /// graph picture.
    pub fn vertex_order(&self) -> [Vec<usize>; 3] {
        [0, 1, 2].map(|b| self.branch(b).iter().rev().copied().collect())
    }

    pub fn from_vertex_order(n0: usize, branches: [&[usize]; 3]) -> GenDim {
        let rev = |xs: &[usize]| xs.iter().rev().copied().collect();
        GenDim::new(n0, rev(branches[0]), rev(branches[1]), rev(branches[2]))
    }
}

impl std::fmt::Display for GenDim {
    /// `(n0; n_p; n_q; n_s)` in weight order.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}; {}; {}; {})", self.n0, join(&self.n_p), join(&self.n_q), join(&self.n_s))
    }
}

/// 1-based weight indices `[left, right]` present at distance `j` from the
/// head on a branch of length `k`.
pub(crate) fn window(k: usize, j: usize) -> (usize, usize) {
    (1 + j.div_ceil(2), k - j / 2)
}

/// Character value at distance `j` from the head, given the branch weights.
fn branch_character(w: &[Q], j: usize) -> Q {
    let k = w.len();
    let at = |i: usize| &w[i - 1];
    if j == 0 {
        at(1).clone()
    } else if j % 2 == 1 {
        let t = j.div_ceil(2);
        at(t) - at(k - t + 1)
    } else {
        let t = j / 2;
        at(t + 1) - at(k - t + 1)
    }
}

pub fn params_to_character(p: &AlgebraParams, g: &StarGraph) -> Result<GVector> {
    p.check(g)?;
    let mut f = GVector::zeros(g.vertex_count());
    f.0[0] = p.gamma.clone();
    for b in 0..3 {
        let w = p.branch(b);
        let head = g.head(b);
        for j in 0..w.len() {
            f.0[head - j] = branch_character(w, j);
        }
    }
    Ok(f)
}

pub fn character_to_params(f: &GVector, g: &StarGraph) -> Result<AlgebraParams> {
    if f.len() != g.vertex_count() {
        return Err(Error::LengthMismatch { expected: g.vertex_count(), got: f.len() });
    }
    if let Some(v) = g.vertices().find(|&v| !f.0[v].is_positive()) {
        return Err(Error::NotNonDegenerateCharacter(format!("f(g{v}) is not positive")));
    }
    let mut branches: Vec<Vec<Q>> = Vec::with_capacity(3);
    for b in 0..3 {
        let k = g.branch_lengths()[b];
        let head = g.head(b);
        let mut w = vec![Q::zero(); k];
        let mut partial = Q::zero();
        for j in 0..k {
            if j % 2 == 0 {
                partial += &f.0[head - j];
            } else {
                partial -= &f.0[head - j];
            }
            let idx = if j % 2 == 0 { j / 2 + 1 } else { k - j.div_ceil(2) + 1 };
            w[idx - 1] = partial.clone();
        }
        if !w.iter().all(|x| x.is_positive()) || !w.windows(2).all(|p| p[0] > p[1]) {
            return Err(Error::NotNonDegenerateCharacter(format!(
                "branch {b} yields weights {:?}, not positive strictly decreasing",
                rational::format_list(&w)
            )));
        }
        branches.push(w);
    }
    let delta = branches.pop().unwrap();
    let beta = branches.pop().unwrap();
    let alpha = branches.pop().unwrap();
    AlgebraParams::new(alpha, beta, delta, f.0[0].clone()).map_err(|e| Error::NotNonDegenerateCharacter(e.to_string()))
}

pub fn dim_to_generalized(d: &GVector, g: &StarGraph) -> Result<GenDim> {
    if d.len() != g.vertex_count() {
        return Err(Error::LengthMismatch { expected: g.vertex_count(), got: d.len() });
    }
    if !coxeter::is_nondegenerate_dim(g, d) {
        return Err(Error::DegenerateDimension(d.to_string()));
    }
    let ints = d.to_ints().ok_or_else(|| Error::DegenerateDimension(d.to_string()))?;
    let mut out: [Vec<usize>; 3] = Default::default();
    for (b, slot) in out.iter_mut().enumerate() {
        let k = g.branch_lengths()[b];
        let head = g.head(b);
        let mut n = vec![0usize; k];
        for j in 0..k {
            let here = ints[head - j];
            let next = if j + 1 < k { ints[head - j - 1] } else { 0 };
            let idx = if j % 2 == 0 { 1 + j / 2 } else { k - (j - 1) / 2 };
            n[idx - 1] = (here - next) as usize;
        }
        *slot = n;
    }
    let [n_p, n_q, n_s] = out;
    Ok(GenDim::new(ints[0] as usize, n_p, n_q, n_s))
}

pub fn generalized_to_dim(n: &GenDim, g: &StarGraph) -> Result<GVector> {
    if n.lengths() != g.branch_lengths() {
        return Err(Error::ShapeMismatch(format!(
            "generalized dimension lengths {:?} do not match graph {}",
            n.lengths(),
            g
        )));
    }
    let mut d = vec![0i64; g.vertex_count()];
    d[0] = n.n0 as i64;
    for b in 0..3 {
        let ranks = n.branch(b);
        let k = ranks.len();
        let head = g.head(b);
        for j in 0..k {
            let (lo, hi) = window(k, j);
            d[head - j] = ranks[lo - 1..hi].iter().sum::<usize>() as i64;
        }
    }
    Ok(GVector::from_ints(&d))
}
