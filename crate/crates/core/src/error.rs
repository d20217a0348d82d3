use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("branch lengths must be positive, got ({0}, {1}, {2})")]
    InvalidBranchLengths(i64, i64, i64),

    #[error("vertex {vertex} does not exist in a graph with {count} vertices")]
    UnknownVertex { vertex: usize, count: usize },

    #[error("vector has {got} coordinates but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("graph {0} is not a finite Dynkin graph")]
    NotDynkin(String),

    #[error("graph {0} is not one of D4, E6, E7, E8")]
    NotCatalogued(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("not a non-degenerate character: {0}")]
    NotNonDegenerateCharacter(String),

    #[error("not a non-degenerate dimension: {0}")]
    DegenerateDimension(String),

    #[error("character is not positive on the support: {0}")]
    CharacterNotPositive(String),

    #[error("orbit did not close within {cap} steps")]
    OrbitCapExceeded { cap: usize },

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("rank extraction failed: {0}")]
    RankExtraction(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
