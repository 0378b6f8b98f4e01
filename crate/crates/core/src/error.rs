use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field value: {0}")]
    InvalidFieldValue(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("coaction entry ({row}, {col}) is not a bar cocycle")]
    NonCocycleEntry { row: usize, col: usize },
    #[error("connection is not flat")]
    NonFlat,
    #[error("malformed structure: {0}")]
    Structure(String),
    #[error("unresolved face ({index}, {alpha}): {reason}")]
    UnresolvedFace {
        index: usize,
        alpha: &'static str,
        reason: String,
    },
    #[error("unsupported expression: {0}")]
    Unsupported(String),
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
