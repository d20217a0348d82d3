//! Irreducible non-degenerate *-representations of the algebras generated by
//! three weighted families of orthoprojections whose sum is a scalar,
//! attached to star-shaped Dynkin graphs.
//!
//! The crate has two layers:
//!
//! * an exact layer ([`star_graph`], [`coxeter`], [`bridge`], [`membership`])
//!   working over arbitrary-precision rationals, which decides for which
//!   parameters an irreducible representation exists and in which
//!   generalized dimension;
//! * a numerical layer ([`rep`]) which constructs the representation as
//!   complex Hermitian matrices and checks its properties (relations, ranks,
//!   irreducibility, uniqueness, local scalarity on the graph side).
//!
//! Data-parallel loops (orbit enumeration, decider cross-validation, solver
//! restarts) run on rayon when the `parallel` feature is enabled (default)
//! and fall back to plain iterators otherwise.

pub mod bridge;
pub mod coxeter;
pub mod error;
pub mod json;
pub mod membership;
pub mod par;
pub mod rational;
pub mod rep;
pub mod star_graph;

pub use bridge::{AlgebraParams, GenDim};
pub use coxeter::{GVector, Parity};
pub use error::{Error, Result};
pub use par::Execution;
pub use rational::Q;
pub use star_graph::{DynkinClass, DynkinTag, StarGraph, Vertex};
