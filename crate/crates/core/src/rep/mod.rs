//! Numerical construction and verification of *-representations: three
//! families of mutually orthogonal projections `(P_i)`, `(Q_j)`, `(S_d)` on
//! `C^n0` with `sum alpha_i P_i + sum beta_j Q_j + sum delta_d S_d = gamma I`.

mod graph;
mod linalg;
mod solver;

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

pub use graph::{measure_local_scalars, star_to_graph, GraphEdge, GraphRep, LocalScalar};
pub use linalg::{random_unitary, CMat, C64};
pub use solver::{solve_representation, SolveOptions, SolveOutcome, Solved};

use crate::bridge::{AlgebraParams, GenDim};
use crate::error::{Error, Result};
use crate::rational::{self, qi, Q};

/// A concrete representation. `families[0]` holds the projections weighted by
/// `alpha`, `families[1]` by `beta`, `families[2]` by `delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarRep {
    pub params: AlgebraParams,
    pub gendim: GenDim,
    pub families: [Vec<CMat>; 3],
}

impl StarRep {
    pub fn dim(&self) -> usize {
        self.gendim.n0
    }

    pub fn all_matrices(&self) -> impl Iterator<Item = &CMat> {
        self.families.iter().flatten()
    }

    /// `sum w P - gamma I` over all families.
    pub fn relation_residual(&self) -> CMat {
        let n = self.dim();
        let gamma = rational::to_f64(&self.params.gamma);
        let mut r = CMat::identity(n, n) * C64::from(-gamma);
        for b in 0..3 {
            for (w, m) in self.params.branch(b).iter().zip(&self.families[b]) {
                r += m * C64::from(rational::to_f64(w));
            }
        }
        r
    }

    /// `U M U*` for every generator.
    pub fn conjugate(&self, u: &CMat) -> StarRep {
        let ua = u.adjoint();
        let families = self.families.clone().map(|fam| fam.iter().map(|m| u * m * &ua).collect());
        StarRep { params: self.params.clone(), gendim: self.gendim.clone(), families }
    }

    /// Block-diagonal direct sum with another representation of the same
    /// algebra.
    pub fn direct_sum(&self, other: &StarRep) -> Result<StarRep> {
        if self.params != other.params || self.gendim.lengths() != other.gendim.lengths() {
            return Err(Error::ShapeMismatch("direct sum of different algebras".into()));
        }
        let (n1, n2) = (self.dim(), other.dim());
        let mut families: [Vec<CMat>; 3] = Default::default();
        for (out, (mine, theirs)) in families.iter_mut().zip(self.families.iter().zip(&other.families)) {
            for (a, c) in mine.iter().zip(theirs) {
                let mut m = CMat::zeros(n1 + n2, n1 + n2);
                m.view_mut((0, 0), (n1, n1)).copy_from(a);
                m.view_mut((n1, n1), (n2, n2)).copy_from(c);
                out.push(m);
            }
        }
        let add = |x: &[usize], y: &[usize]| x.iter().zip(y).map(|(a, b)| a + b).collect();
        let gendim = GenDim::new(
            n1 + n2,
            add(&self.gendim.n_p, &other.gendim.n_p),
            add(&self.gendim.n_q, &other.gendim.n_q),
            add(&self.gendim.n_s, &other.gendim.n_s),
        );
        Ok(StarRep { params: self.params.clone(), gendim, families })
    }
}

/// Eigenvalue/multiplicity pairs of `A = sum alpha_i P_i` (and likewise `B`,
/// `C`) in a representation of generalized dimension `n`, largest first,
/// ending with the eigenvalue 0.
pub fn target_spectra(p: &AlgebraParams, n: &GenDim) -> Result<[Vec<(Q, usize)>; 3]> {
    if p.lengths() != n.lengths() {
        return Err(Error::ShapeMismatch(format!(
            "parameter lengths {:?} vs generalized dimension lengths {:?}",
            p.lengths(),
            n.lengths()
        )));
    }
    let mut out: [Vec<(Q, usize)>; 3] = Default::default();
    for (b, spec) in out.iter_mut().enumerate() {
        let ranks = n.branch(b);
        if ranks.contains(&0) {
            return Err(Error::DegenerateDimension(format!("{n}: a projection of rank 0")));
        }
        let used: usize = ranks.iter().sum();
        if used >= n.n0 {
            return Err(Error::DegenerateDimension(format!("{n}: family {b} fills the whole space")));
        }
        spec.extend(p.branch(b).iter().cloned().zip(ranks.iter().copied()));
        spec.push((Q::zero(), n.n0 - used));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub hermiticity: f64,
    pub idempotence: f64,
    pub orthogonality: f64,
    pub sum_residual: f64,
    /// Ranks counted as eigenvalues above 1/2, per family.
    pub ranks: [Vec<usize>; 3],
    pub ranks_match: bool,
    /// `n0 - sum of ranks` per family; positive for a non-degenerate
    /// representation.
    pub nondegeneracy_margins: [i64; 3],
    pub tol: f64,
    pub pass: bool,
}

pub fn verify(r: &StarRep, tol: f64) -> VerifyReport {
    let n = r.dim();
    let mut herm: f64 = 0.0;
    let mut idem: f64 = 0.0;
    let mut orth: f64 = 0.0;
    let mut ranks: [Vec<usize>; 3] = Default::default();
    let mut shapes_ok = true;
    for (b, fam) in r.families.iter().enumerate() {
        for (i, m) in fam.iter().enumerate() {
            if m.shape() != (n, n) {
                shapes_ok = false;
                ranks[b].push(0);
                continue;
            }
            herm = herm.max((m - m.adjoint()).norm());
            idem = idem.max((m * m - m).norm());
            let eig = linalg::hermitian_eigenvalues(m);
            ranks[b].push(eig.iter().filter(|&&x| x > 0.5).count());
            for other in &fam[i + 1..] {
                if other.shape() == (n, n) {
                    orth = orth.max((m * other).norm()).max((other * m).norm());
                }
            }
        }
    }
    let sum_residual = if shapes_ok { r.relation_residual().norm() } else { f64::INFINITY };
    let ranks_match = shapes_ok && (0..3).all(|b| ranks[b].as_slice() == r.gendim.branch(b));
    let margins = [0, 1, 2].map(|b| n as i64 - ranks[b].iter().sum::<usize>() as i64);
    let nondegenerate = margins.iter().all(|&m| m > 0) && ranks.iter().flatten().all(|&x| x > 0);
    let pass =
        shapes_ok && herm < tol && idem < tol && orth < tol && sum_residual < tol && ranks_match && nondegenerate;
    VerifyReport {
        hermiticity: herm,
        idempotence: idem,
        orthogonality: orth,
        sum_residual,
        ranks,
        ranks_match,
        nondegeneracy_margins: margins,
        tol,
        pass,
    }
}

/// Matrix of the linear map `X -> (X M1 - M2 X)` stacked over all pairs,
/// acting on column-major `vec(X)`.
fn intertwining_system(pairs: &[(&CMat, &CMat)], n1: usize, n2: usize) -> CMat {
    // X: n2 x n1, each equation block is n2 x n1
    let block = n2 * n1;
    let mut l = CMat::zeros(pairs.len() * block, n2 * n1);
    for a in 0..n2 {
        for c in 0..n1 {
            let col = a + c * n2;
            for (pi, (m1, m2)) in pairs.iter().enumerate() {
                // E_ac M1 has row a equal to row c of M1;
                // M2 E_ac has column c equal to column a of M2.
                let base = pi * block;
                for j in 0..n1 {
                    l[(base + a + j * n2, col)] += m1[(c, j)];
                }
                for i in 0..n2 {
                    l[(base + i + c * n2, col)] -= m2[(i, a)];
                }
            }
        }
    }
    l
}

/// Dimension of the space of matrices commuting with every given matrix,
/// counting singular values at most `tol` times the largest.
pub fn commutant_dimension_of(mats: &[&CMat], tol: f64) -> usize {
    let Some(first) = mats.first() else { return 0 };
    let n = first.nrows();
    let pairs: Vec<_> = mats.iter().map(|m| (*m, *m)).collect();
    let l = intertwining_system(&pairs, n, n);
    linalg::null_space(&l, tol).ncols()
}

pub fn commutant_dimension(r: &StarRep, tol: f64) -> usize {
    let mats: Vec<&CMat> = r.all_matrices().collect();
    commutant_dimension_of(&mats, tol)
}

/// Whether some invertible `X` satisfies `X M1 = M2 X` for every pair of
/// corresponding generators. For irreducible representations this is
/// unitary equivalence.
pub fn intertwiner_equivalence(r1: &StarRep, r2: &StarRep, tol: f64) -> Result<bool> {
    if r1.params != r2.params || r1.gendim != r2.gendim {
        return Err(Error::ShapeMismatch("representations of different algebras or dimensions".into()));
    }
    let (n1, n2) = (r1.dim(), r2.dim());
    let pairs: Vec<_> = r1.all_matrices().zip(r2.all_matrices()).collect();
    let l = intertwining_system(&pairs, n1, n2);
    let null = linalg::null_space(&l, tol);
    if null.ncols() == 0 {
        return Ok(false);
    }
    // A fixed generic combination of the null-space basis is invertible
    // whenever any element is.
    let mut v = DMatrix::<C64>::zeros(n1 * n2, 1);
    for c in 0..null.ncols() {
        let coef = C64::new(1.0 / (c as f64 + 1.0), 0.37 * c as f64);
        v += null.column(c) * coef;
    }
    let x = CMat::from_column_slice(n2, n1, v.as_slice());
    let sv = x.singular_values();
    let (max, min) = sv.iter().fold((0.0f64, f64::INFINITY), |(a, b), &s| (a.max(s), b.min(s)));
    Ok(max > 0.0 && min / max > 1e-6)
}

/// Exact trace obstruction: nonzero means no representation in this
/// generalized dimension exists at all.
pub fn trace_obstruction(p: &AlgebraParams, n: &GenDim) -> Result<Option<Q>> {
    let defect = p.trace_defect(n)?;
    Ok((!defect.is_zero()).then_some(defect))
}

/// Closed-form D4 representation for `alpha = beta = delta = 1`,
/// `gamma = 3/2`: rank-one projections onto three real lines at mutual
/// angles of 60 degrees.
pub fn sixty_degree_lines() -> StarRep {
    let line = |theta: f64| {
        let (c, s) = (theta.cos(), theta.sin());
        CMat::from_row_slice(2, 2, &[C64::from(c * c), C64::from(c * s), C64::from(c * s), C64::from(s * s)])
    };
    let third = std::f64::consts::PI / 3.0;
    let params = AlgebraParams::new(vec![qi(1)], vec![qi(1)], vec![qi(1)], rational::q(3, 2)).expect("valid");
    StarRep {
        params,
        gendim: GenDim::new(2, vec![1], vec![1], vec![1]),
        families: [vec![line(0.0)], vec![line(third)], vec![line(2.0 * third)]],
    }
}
