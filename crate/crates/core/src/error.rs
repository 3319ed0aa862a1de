use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("jet order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("variable index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("multi-index {0:?} is invalid for this jet")]
    BadMultiIndex(Vec<u32>),
    #[error("non-finite scalar {0}")]
    NonFinite(String),
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("constant term {0} lies on the principal branch cut")]
    BranchCut(String),
    #[error("jet order {have} too small, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("point {0:?} is outside the domain")]
    Inadmissible(Vec<f64>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
