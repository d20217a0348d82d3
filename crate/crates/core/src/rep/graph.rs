//! Passage from a *-representation to a locally-scalar representation of
//! the star graph.
//!
//! The center carries `C^n0`. A vertex at distance `j` from the head of a
//! branch carries the direct sum of the ranges of the projections in
//! [`window`](crate::bridge::window)`(k, j)`. The center edge of a branch is
//! the block row `[sqrt(w_1) V_1, ..., sqrt(w_k) V_k]` (each `V_i` an
//! orthonormal basis of the range of the `i`-th projection); interior edges
//! are block-diagonal embeddings whose scalar weights make every vertex
//! operator a multiple of the identity.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::linalg::{hermitian_eigen, hermitian_eigenvalues, CMat, C64};
use super::StarRep;
use crate::bridge::window;
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::star_graph::{StarGraph, Vertex};

/// Edge operator from the space at `child` into the space at `parent`
/// (`parent` is the endpoint nearer the center). The reverse operator is its
/// adjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphEdge {
    pub parent: Vertex,
    pub child: Vertex,
    pub op: CMat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphRep {
    pub graph: StarGraph,
    pub dims: Vec<usize>,
    pub edges: Vec<GraphEdge>,
}

impl GraphRep {
    /// `A_v`: the sum over incident edges of the composition "out and back".
    pub fn vertex_operator(&self, v: Vertex) -> CMat {
        let n = self.dims[v];
        let mut a = CMat::zeros(n, n);
        for e in &self.edges {
            if e.parent == v {
                a += &e.op * e.op.adjoint();
            }
            if e.child == v {
                a += e.op.adjoint() * &e.op;
            }
        }
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalScalar {
    pub vertex: Vertex,
    pub mean: f64,
    /// Largest minus smallest eigenvalue of the vertex operator.
    pub spread: f64,
}

/// Orthonormal basis of the range of a projection.
fn range_basis(p: &CMat) -> CMat {
    let (vals, vecs) = hermitian_eigen(p);
    let r = vals.iter().filter(|&&x| x > 0.5).count();
    vecs.columns(0, r).into_owned()
}

pub fn star_to_graph(r: &StarRep) -> Result<GraphRep> {
    let [k, l, m] = r.gendim.lengths();
    let graph = StarGraph::new(k as i64, l as i64, m as i64)?;
    let n0 = r.dim();
    let mut dims = vec![0; graph.vertex_count()];
    dims[0] = n0;
    let mut edges = Vec::new();
    for b in 0..3 {
        let weights = r.params.branch(b);
        let bases: Vec<CMat> = r.families[b].iter().map(range_basis).collect();
        let ranks: Vec<usize> = bases.iter().map(|v| v.ncols()).collect();
        if ranks.contains(&0) {
            return Err(Error::RankExtraction(format!("family {b} has a zero projection")));
        }
        let len = weights.len();
        let head = graph.head(b);
        let block_dim = |(lo, hi): (usize, usize)| ranks[lo - 1..hi].iter().sum::<usize>();

        let mut center = CMat::zeros(n0, block_dim(window(len, 0)));
        let mut col = 0;
        for (w, v) in weights.iter().zip(&bases) {
            center.columns_mut(col, v.ncols()).copy_from(&(v * C64::from(rational::to_f64(w).sqrt())));
            col += v.ncols();
        }
        dims[head] = center.ncols();
        edges.push(GraphEdge { parent: 0, child: head, op: center });

        // local[i - 1]: contribution of the parent edge to summand i
        let mut local: Vec<Q> = weights.to_vec();
        for j in 0..len - 1 {
            let (plo, phi) = window(len, j);
            let (clo, chi) = window(len, j + 1);
            let dropped = if clo > plo { plo } else { phi };
            let scalar = local[dropped - 1].clone();
            let mut op = CMat::zeros(block_dim((plo, phi)), block_dim((clo, chi)));
            let (mut row, mut col) = (0, 0);
            for i in plo..=phi {
                if (clo..=chi).contains(&i) {
                    let sq = &scalar - &local[i - 1];
                    if !sq.is_positive() {
                        return Err(Error::InvalidParams(format!("branch {b} weights are not strictly decreasing")));
                    }
                    let w = rational::to_f64(&sq).sqrt();
                    for t in 0..ranks[i - 1] {
                        op[(row + t, col + t)] = C64::from(w);
                    }
                    local[i - 1] = sq;
                    col += ranks[i - 1];
                } else {
                    local[i - 1] = Q::zero();
                }
                row += ranks[i - 1];
            }
            let (parent, child) = (head - j, head - j - 1);
            dims[child] = op.ncols();
            edges.push(GraphEdge { parent, child, op });
        }
    }
    Ok(GraphRep { graph, dims, edges })
}

pub fn measure_local_scalars(gr: &GraphRep) -> Vec<LocalScalar> {
    gr.graph
        .vertices()
        .map(|v| {
            let eig = hermitian_eigenvalues(&gr.vertex_operator(v));
            let (max, min) = (eig.first().copied().unwrap_or(0.0), eig.last().copied().unwrap_or(0.0));
            let mean = if eig.is_empty() { 0.0 } else { eig.iter().sum::<f64>() / eig.len() as f64 };
            LocalScalar { vertex: v, mean, spread: max - min }
        })
        .collect()
}
