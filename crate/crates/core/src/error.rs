//! Crate-wide error types.

use thiserror::Error;

/// Position of a parse failure in presentation source text (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourcePos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for SourcePos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: SourcePos, msg: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("invalid family parameters: need n >= 2 and m >= 0, got n={n}, m={m}")]
    BadFamilyParameters { n: i64, m: i64 },

    #[error("not a string algebra: {0}")]
    NotStringAlgebra(String),

    #[error("the algebra is infinite-dimensional (a relation-free directed cycle exists)")]
    InfiniteDimensional,

    #[error("the algebra has infinite representation type: band {0} found")]
    InfiniteType(String),

    #[error("word is not a string: {0}")]
    NotAString(String),

    #[error("hook/cohook undefined: {0}")]
    HookUndefined(String),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("window does not induce a graph map (intertwining fails)")]
    InvalidWindow,

    #[error("module is not indecomposable")]
    NotIndecomposable,

    #[error("zero morphism: depth is undefined (formally infinite)")]
    ZeroMorphism,

    #[error("no almost split sequence starts at an injective module")]
    InjectiveEndpoint,

    #[error("no almost split sequence ends at a projective module")]
    ProjectiveEndpoint,

    #[error("almost split certification failed: {0}")]
    CertificationFailed(String),

    #[error("not a path in the AR quiver: {0}")]
    NotAPath(String),

    #[error("module not found in the indecomposable index: {0}")]
    NotInIndex(String),

    #[error("chain construction failed: {0}")]
    ChainConstruction(String),

    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
