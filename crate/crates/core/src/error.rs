use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed simplex: {0}")]
    MalformedSimplex(String),

    #[error("a chain of dimension {0} has no boundary")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("simplex index {index} out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, index: usize },

    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("unknown decomposition node {0}")]
    UnknownNode(usize),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
