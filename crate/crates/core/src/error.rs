use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid globular pattern: {0}")]
    InvalidPattern(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("cospine D_{dimension} -> {object} needs dimension >= height {height}")]
    CospineTooLow {
        dimension: usize,
        object: String,
        height: usize,
    },

    #[error("invalid finite category: {0}")]
    InvalidCategory(String),

    #[error("invalid globular set: {0}")]
    InvalidGlobularSet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
