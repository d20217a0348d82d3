//! Star-shaped trees with three branches.
//!
//! Vertices are indexed canonically: `0` is the center; branch `b` occupies
//! a contiguous block, listed from the far end towards the center, so the
//! last vertex of each block (the branch *head*) is adjacent to the center.
//! For branch lengths `(2, 2, 1)` that gives `g1 - g2 - g0 - g4 - g3` with
//! `g5` hanging off `g0`.

use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Bipartition class of a vertex. The center is always [`Parity::Odd`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StarGraph {
    lengths: [usize; 3],
    neighbors: Vec<Vec<Vertex>>,
    parity: Vec<Parity>,
}

impl StarGraph {
    pub fn new(k: i64, l: i64, m: i64) -> Result<StarGraph> {
        if k < 1 || l < 1 || m < 1 {
            return Err(Error::InvalidBranchLengths(k, l, m));
        }
        let lengths = [k as usize, l as usize, m as usize];
        let n = 1 + lengths.iter().sum::<usize>();
        let mut neighbors = vec![Vec::new(); n];
        let mut parity = vec![Parity::Odd; n];
        let mut offset = 1;
        for &len in &lengths {
            for i in 0..len {
                let v = offset + i;
                // distance from the center
                let dist = len - i;
                parity[v] = if dist % 2 == 0 { Parity::Odd } else { Parity::Even };
                let toward_center = if i + 1 == len { 0 } else { v + 1 };
                neighbors[v].push(toward_center);
                neighbors[toward_center].push(v);
            }
            offset += len;
        }
        for adj in &mut neighbors {
            adj.sort_unstable();
        }
        Ok(StarGraph { lengths, neighbors, parity })
    }

    pub fn branch_lengths(&self) -> [usize; 3] {
        self.lengths
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn vertices(&self) -> Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[v]
    }

    pub fn parity(&self, v: Vertex) -> Parity {
        self.parity[v]
    }

    pub fn vertices_of(&self, p: Parity) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(move |&v| self.parity[v] == p)
    }

    /// Edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.vertex_count() - 1);
        for u in self.vertices() {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices of branch `b`, far end first, head last.
    pub fn branch(&self, b: usize) -> Range<Vertex> {
        let start = 1 + self.lengths[..b].iter().sum::<usize>();
        start..start + self.lengths[b]
    }

    pub fn head(&self, b: usize) -> Vertex {
        self.branch(b).end - 1
    }

    /// `(branch, distance from the head)` for a non-center vertex.
    pub fn locate(&self, v: Vertex) -> Option<(usize, usize)> {
        (0..3).find_map(|b| {
            let r = self.branch(b);
            r.contains(&v).then(|| (b, r.end - 1 - v))
        })
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex { vertex: v, count: self.vertex_count() })
        }
    }

    pub fn classify(&self) -> DynkinClass {
        DynkinClass::of_lengths(self.lengths)
    }
}

impl fmt::Display for StarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [k, l, m] = self.lengths;
        write!(f, "T({k},{l},{m})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynkinTag {
    D(usize),
    E6,
    E7,
    E8,
    AffineE6,
    AffineE7,
    AffineE8,
    Indefinite,
}

impl fmt::Display for DynkinTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinTag::D(n) => write!(f, "D{n}"),
            DynkinTag::E6 => f.write_str("E6"),
            DynkinTag::E7 => f.write_str("E7"),
            DynkinTag::E8 => f.write_str("E8"),
            DynkinTag::AffineE6 => f.write_str("AffineE6"),
            DynkinTag::AffineE7 => f.write_str("AffineE7"),
            DynkinTag::AffineE8 => f.write_str("AffineE8"),
            DynkinTag::Indefinite => f.write_str("Indefinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DynkinClass {
    pub tag: DynkinTag,
    pub coxeter_number: Option<u32>,
}

impl DynkinClass {
    fn of_lengths(lengths: [usize; 3]) -> DynkinClass {
        let mut s = lengths.map(|x| x + 1);
        s.sort_unstable();
        let [p, q, r] = s;
        // compare 1/p + 1/q + 1/r with 1 using integers
        let lhs = q * r + p * r + p * q;
        let rhs = p * q * r;
        let tag = if lhs > rhs {
            match (p, q, r) {
                (2, 2, r) => DynkinTag::D(r + 2),
                (2, 3, 3) => DynkinTag::E6,
                (2, 3, 4) => DynkinTag::E7,
                (2, 3, 5) => DynkinTag::E8,
                _ => unreachable!("finite star types are D and E only"),
            }
        } else if lhs == rhs {
            match (p, q, r) {
                (3, 3, 3) => DynkinTag::AffineE6,
                (2, 4, 4) => DynkinTag::AffineE7,
                (2, 3, 6) => DynkinTag::AffineE8,
                _ => unreachable!("affine star types are E~6, E~7, E~8 only"),
            }
        } else {
            DynkinTag::Indefinite
        };
        let coxeter_number = match tag {
            DynkinTag::D(n) => Some(2 * n as u32 - 2),
            DynkinTag::E6 => Some(12),
            DynkinTag::E7 => Some(18),
            DynkinTag::E8 => Some(30),
            _ => None,
        };
        DynkinClass { tag, coxeter_number }
    }

    pub fn is_finite(&self) -> bool {
        self.coxeter_number.is_some()
    }

    /// Number of positive roots of a finite type.
    pub fn positive_root_count(&self) -> Option<usize> {
        match self.tag {
            DynkinTag::D(n) => Some(n * (n - 1)),
            DynkinTag::E6 => Some(36),
            DynkinTag::E7 => Some(63),
            DynkinTag::E8 => Some(120),
            _ => None,
        }
    }

    /// Whether irreducible non-degenerate representations are catalogued
    /// for this type (D4, E6, E7, E8).
    pub fn is_catalogued(&self) -> bool {
        matches!(self.tag, DynkinTag::D(4) | DynkinTag::E6 | DynkinTag::E7 | DynkinTag::E8)
    }
}
