//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("cannot parse algebra spec: {0}")]
    Parse(String),
    #[error("unsupported algebra type: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scalar domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },
    #[error("{0} is not a valid prime for this toolkit")]
    InvalidPrime(u64),
    #[error("denominator divisible by {0}; rational does not reduce")]
    BadReduction(u64),
    #[error("abelian algebra has no principal triple")]
    NoTriple,
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("index set is not closed under the bracket")]
    NotSubalgebra,
    #[error("point lies in the rank-drop locus X_g (evaluated span has dimension {got}, need {need})")]
    RankDeficientPoint { got: usize, need: usize },
    #[error("point is a commuting pair; check requires [x,y] != 0")]
    CommutingInput,
    #[error("point is not a commuting pair")]
    NoncommutingInput,
    #[error("could not sample a regular element after {0} retries")]
    RegularityRetries(usize),
    #[error("resource budget exceeded in {check}: {detail}")]
    Budget { check: String, detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("empty point count; variety appears empty, no dimension estimate")]
    EmptyCount,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
