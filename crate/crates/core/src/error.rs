use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("graph is not perfect")]
    NotPerfect,

    #[error("{what}: size {size} exceeds limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("monomial has {got} exponents, ambient graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    /// A generator search ran out of degrees before it stabilised.
    #[error(
        "generator search for {what} inconclusive: no stable degree window up to degree {degree}"
    )]
    Inconclusive { what: &'static str, degree: i64 },

    /// Two independent computations of the same quantity disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
