//! Closed-form existence conditions for D4, E6, E7 and E8.
//!
//! Every case is a list of strict linear inequalities, one linear equality,
//! and the generalized dimension of the unique representation. Conditions
//! are written over the variables `a1, a2` (alpha), `b1..b4` (beta), `d`
//! (the single delta weight) and `g` (gamma), against the canonical branch
//! lengths `(alpha, beta, delta)` = (1,1,1), (2,2,1), (2,3,1), (2,4,1).
//!
//! Generalized dimensions are listed per branch from the far vertex to the
//! head, i.e. in reverse weight order: `(4; 1,2; 1,1,1; 2)` means the
//! `alpha_1` projection has rank 2 and the `alpha_2` projection rank 1.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::bridge::GenDim;
use crate::rational::{qi, Q};

pub struct CaseSpec {
    pub n0: usize,
    pub ranks: [&'static [usize]; 3],
    pub inequalities: &'static [&'static str],
    pub equality: &'static str,
}

pub struct GraphCatalog {
    pub name: &'static str,
    pub lengths: [usize; 3],
    pub cases: &'static [CaseSpec],
}

macro_rules! case {
    (($n0:expr; $a:expr; $b:expr; $d:expr), [$($ineq:expr),* $(,)?], $eq:expr) => {
        CaseSpec { n0: $n0, ranks: [&$a, &$b, &$d], inequalities: &[$($ineq),*], equality: $eq }
    };
}

pub static D4: GraphCatalog = GraphCatalog {
    name: "D4",
    lengths: [1, 1, 1],
    cases: &[case!((2; [1]; [1]; [1]), ["d + b1 > a1", "a1 + b1 > d", "d + a1 > b1"], "2g = a1 + b1 + d")],
};

pub static E6: GraphCatalog = GraphCatalog {
    name: "E6",
    lengths: [2, 2, 1],
    cases: &[
        case!(
            (3; [1, 1]; [1, 1]; [1]),
            ["g > a1", "g > b1", "a2 + b1 > g", "a1 + b2 > g", "g > a2 + b2"],
            "3g = d + a1 + a2 + b1 + b2"
        ),
        case!(
            (3; [1, 1]; [1, 1]; [2]),
            ["d + b1 > g", "g > d + a2", "g > d + b2", "d + a1 > g", "d + a2 + b2 > g"],
            "3g = 2d + a1 + a2 + b1 + b2"
        ),
    ],
};

pub static E7: GraphCatalog = GraphCatalog {
    name: "E7",
    lengths: [2, 3, 1],
    cases: &[
        case!(
            (4; [1, 1]; [1, 1, 1]; [2]),
            [
                "g > d + b3",
                "d + a1 + b1 > 2g",
                "d + b2 > g",
                "2g > d + a2 + b1",
                "g > b1",
                "2g > d + a1 + b2",
            ],
            "4g = a1 + a2 + b1 + b2 + b3 + 2d"
        ),
        case!(
            (4; [1, 2]; [1, 1, 1]; [2]),
            [
                "a1 + b2 > g",
                "2g > a1 + b1 + d",
                "g > a1 + b3",
                "2g > d + a1 + b2 + b3",
                "d + a1 > g",
                "d + a1 + b1 + b3 > 2g",
            ],
            "4g = 2a1 + a2 + b1 + b2 + b3 + 2d"
        ),
        case!(
            (4; [2, 1]; [1, 1, 1]; [2]),
            [
                "g > a2 + b2",
                "d + a2 + b3 > g",
                "a2 + b1 > g",
                "d + a2 + b1 + b2 > 2g",
                "g > d + a2",
                "2g > d + a2 + b1 + b3",
            ],
            "4g = a1 + 2a2 + b1 + b2 + b3 + 2d"
        ),
    ],
};

pub static E8: GraphCatalog = GraphCatalog {
    name: "E8",
    lengths: [2, 4, 1],
    cases: &[
        case!(
            (5; [2, 1]; [1, 1, 1, 1]; [2]),
            [
                "g > a2 + b3",
                "d + a2 + b1 + b4 > 2g",
                "a2 + b2 > g",
                "d + a2 + b2 + b3 > 2g",
                "2g > d + a2 + b1",
                "g > b1",
                "2g > d + a2 + b2 + b4",
            ],
            "5g = 2d + a1 + 2a2 + b1 + b2 + b3 + b4"
        ),
        case!(
            (5; [2, 2]; [1, 1, 1, 1]; [3]),
            [
                "d + a2 + b3 > g",
                "5g + b1 + b3 + b4 > 2d + 3a1 + 3a2 + 4b2",
                "g > d + a2 + b4",
                "4d + a1 + a2 + 3b1 + 3b2 > 5g + 2b3 + 2b4",
                "2d + 3a1 + 3a2 + 4b1 > 5g + b2 + b3 + b4",
                "d + a1 > g",
                "2d + 3a1 + 3a2 + 4b2 + 4b4 > 5g + b1 + b3",
            ],
            "5g = 3d + 2a1 + 2a2 + b1 + b2 + b3 + b4"
        ),
        case!(
            (6; [2, 2]; [1, 1, 1, 1]; [3]),
            [
                "2g > d + a1 + b2",
                "d + a1 + a2 + b3 > 2g",
                "d + a1 + b1 > 2g",
                "3g > 2d + a1 + a2 + b3 + b4",
                "2g > d + a1 + a2 + b4",
                "g > d + a2",
                "2d + a1 + a2 + b2 + b4 > 3g",
            ],
            "6g = 3d + 2a1 + 2a2 + b1 + b2 + b3 + b4"
        ),
        case!(
            (6; [2, 2]; [1, 1, 1, 2]; [3]),
            [
                "d + a1 + b1 + b4 > 2g",
                "2g > d + a2 + b1 + b3",
                "2g > d + a1 + b1",
                "3g > 2d + a1 + a2 + b1 + b4",
                "d + a2 + b1 + b2 > 2g",
                "a2 + b1 > g",
                "2d + a1 + a2 + b1 + b3 > 3g",
            ],
            "6g = 3d + 2a1 + 2a2 + 2b1 + b2 + b3 + b4"
        ),
        case!(
            (6; [2, 2]; [2, 1, 1, 1]; [3]),
            [
                "2g > d + a2 + b1 + b4",
                "d + a1 + b2 + b4 > 2g",
                "d + a2 + b4 > g",
                "2d + a1 + a2 + b1 + b4 > 3g",
                "2g > d + a1 + b3 + b4",
                "g > a1 + b4",
                "3g > 2d + a1 + a2 + b2 + b4",
            ],
            "6g = 3d + 2a1 + 2a2 + b1 + b2 + b3 + 2b4"
        ),
        case!(
            (6; [2, 2]; [1, 1, 2, 1]; [3]),
            [
                "d + a1 + a2 + b2 > 2g",
                "2g > d + a1 + b2 + b4",
                "g > a2 + b2",
                "3g > d + a1 + a2 + b1 + b2",
                "d + a1 + b2 + b3 > 2g",
                "d + b2 > g",
                "3g > 2d + a1 + a2 + b2 + b3",
            ],
            "6g = 3d + 2a1 + 2a2 + b1 + 2b2 + b3 + b4"
        ),
        case!(
            (6; [2, 2]; [1, 2, 1, 1]; [3]),
            [
                "2g > d + a1 + a2 + b3",
                "d + a2 + b1 + b3 > 2g",
                "a1 + b3 > g",
                "d + a1 + a2 + b3 + b4 > 2g",
                "2g > d + a2 + b2 + b3",
                "g > d + b3",
                "2d + a1 + a2 + b2 + b3 > 3g",
            ],
            "6g = 3d + 2a1 + 2a2 + b1 + b2 + 2b3 + b4"
        ),
        case!(
            (5; [1, 2]; [1, 1, 1, 1]; [2]),
            [
                "5g + a2 + b1 + b3 + b4 > 3d + 3a1 + 4b2",
                "a1 + b3 > g",
                "g > b1",
                "5g + 2b1 > d + a1 + 3a2 + 3b2 + 3b3 + 3b4",
                "5g + a2 + b1 + b2 > 3d + 3a1 + 4b3 + 4b4",
                "g > a1 + b4",
                "5g + 2b2 + 2b4 > d + a1 + 3a2 + 3b1 + 3b3",
            ],
            "5g = 2d + 2a1 + a2 + b1 + b2 + b3 + b4"
        ),
        case!(
            (5; [1, 2]; [1, 1, 1, 1]; [3]),
            [
                "5g + 2b1 + 2b4 > 4d + a1 + 3a2 + 3b2 + 3b3",
                "g > d + b3",
                "d + a1 > g",
                "5g + a2 + b2 + b3 + b4 > 2d + 3a1 + 4b1",
                "5g + 2b2 + 2b3 > 4d + a1 + 3a2 + 3b1 + 3b4",
                "d + b2 > g",
                "5g + a2 + b1 + b3 > 2d + 3a1 + 4b2 + 4b4",
            ],
            "5g = 3d + 2a1 + a2 + b1 + b2 + b3 + b4"
        ),
        case!(
            (5; [2, 1]; [1, 1, 1, 1]; [3]),
            [
                "5g + a1 + b2 + b3 > 2d + 3a2 + 4b1 + 4b4",
                "d + b2 > g",
                "g > d + a2",
                "d + a2 + b4 > g",
                "5g + a1 + b1 + b4 > 2d + 3a2 + 4b2 + 4b3",
                "g > d + b3",
                "5g + 2b1 + 2b3 > 4d + 3a1 + a2 + 3b2 + 3b4",
            ],
            "5g = 3d + a1 + 2a2 + b1 + b2 + b3 + b4"
        ),
        case!(
            (5; [2, 2]; [1, 1, 1, 1]; [2]),
            [
                "5g + 2b2 > d + a1 + a2 + 3b1 + 3b3 + 3b4",
                "g > a1 + b4",
                "a2 + b1 > g",
                "g > a2 + b2",
                "5g + 2b3 + 2b4 > d + a1 + a2 + 3b1 + 3b2",
                "a1 + b3 > g",
                "5g + b1 + b2 + b4 > 3d + 3a1 + 3a2 + 4b3",
            ],
            "5g = 2d + 2a1 + 2a2 + b1 + b2 + b3 + b4"
        ),
    ],
};

pub fn all() -> [&'static GraphCatalog; 4] {
    [&D4, &E6, &E7, &E8]
}

/// Variable layout: weights of the three canonical branches, then gamma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Var {
    Weight(usize, usize),
    Gamma,
}

fn parse_var(s: &str) -> Option<Var> {
    match s {
        "g" => Some(Var::Gamma),
        "d" => Some(Var::Weight(2, 0)),
        _ => {
            let (head, idx) = s.split_at(1);
            let idx: usize = idx.parse().ok()?;
            if idx == 0 {
                return None;
            }
            match head {
                "a" => Some(Var::Weight(0, idx - 1)),
                "b" => Some(Var::Weight(1, idx - 1)),
                _ => None,
            }
        }
    }
}

/// A linear form `sum c_v v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Linear {
    pub terms: Vec<(Var, i64)>,
}

impl Linear {
    fn parse(s: &str) -> Option<Linear> {
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let t = raw.trim();
            let split = t.find(|c: char| !c.is_ascii_digit())?;
            let (coef, var) = t.split_at(split);
            let coef = if coef.is_empty() { 1 } else { coef.parse().ok()? };
            terms.push((parse_var(var.trim())?, coef));
        }
        Some(Linear { terms })
    }

    pub fn eval(&self, weights: [&[Q]; 3], gamma: &Q) -> Q {
        let mut s = Q::zero();
        for &(v, c) in &self.terms {
            let x = match v {
                Var::Gamma => gamma,
                Var::Weight(b, i) => &weights[b][i],
            };
            s += x * qi(c);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Greater,
    Equal,
}

#[derive(Debug, Clone)]
pub(crate) struct Condition {
    pub id: String,
    pub text: &'static str,
    pub lhs: Linear,
    pub rel: Relation,
    pub rhs: Linear,
}

impl Condition {
    fn parse(id: String, text: &'static str) -> Condition {
        let (rel, (l, r)) = if let Some(parts) = text.split_once('>') {
            (Relation::Greater, parts)
        } else if let Some(parts) = text.split_once('=') {
            (Relation::Equal, parts)
        } else {
            panic!("catalog condition {text:?} has no relation");
        };
        let lhs = Linear::parse(l).unwrap_or_else(|| panic!("bad catalog term in {text:?}"));
        let rhs = Linear::parse(r).unwrap_or_else(|| panic!("bad catalog term in {text:?}"));
        Condition { id, text, lhs, rel, rhs }
    }

    pub fn holds(&self, weights: [&[Q]; 3], gamma: &Q) -> bool {
        let diff = self.lhs.eval(weights, gamma) - self.rhs.eval(weights, gamma);
        match self.rel {
            Relation::Greater => diff.is_positive(),
            Relation::Equal => diff.is_zero(),
        }
    }

    /// `lhs - rhs`.
    pub fn slack(&self, weights: [&[Q]; 3], gamma: &Q) -> Q {
        self.lhs.eval(weights, gamma) - self.rhs.eval(weights, gamma)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct CompiledCase {
    pub id: String,
    pub gendim: GenDim,
    /// Index 0 is the equality, then the inequalities in order.
    pub conditions: Vec<Condition>,
}

pub(crate) struct CompiledCatalog {
    pub lengths: [usize; 3],
    pub cases: Vec<CompiledCase>,
}

fn compile(cat: &GraphCatalog) -> CompiledCatalog {
    let cases = cat
        .cases
        .iter()
        .enumerate()
        .map(|(ci, spec)| {
            let id = format!("{}.{}", cat.name, ci + 1);
            let mut conditions = vec![Condition::parse(format!("{id}.0"), spec.equality)];
            for (i, text) in spec.inequalities.iter().enumerate() {
                conditions.push(Condition::parse(format!("{id}.{}", i + 1), text));
            }
            CompiledCase { id, gendim: GenDim::from_vertex_order(spec.n0, spec.ranks), conditions }
        })
        .collect();
    CompiledCatalog { lengths: cat.lengths, cases }
}

pub(crate) fn compiled() -> &'static [CompiledCatalog; 4] {
    static CELL: OnceLock<[CompiledCatalog; 4]> = OnceLock::new();
    CELL.get_or_init(|| all().map(compile))
}

/// Text of a catalogue condition by id (e.g. `E6.1.3`), written over the
/// variables `a1.., b1.., d, g` of the canonical branch order.
pub fn condition_text(id: &str) -> Option<&'static str> {
    compiled().iter().flat_map(|c| &c.cases).flat_map(|c| &c.conditions).find(|c| c.id == id).map(|c| c.text)
}
