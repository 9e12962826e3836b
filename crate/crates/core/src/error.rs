use thiserror::Error;

/// Errors produced by the branching engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported type `{0}`; supported: A_n (n>=1), B_n (n>=2), C_n (n>=3), D_n (n>=4), G2 and products joined by `x`")]
    UnsupportedType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NonDominant(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("inconsistent embedding: {0}")]
    InconsistentEmbedding(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("point {0} is not in the interior of the branching cone")]
    NotInterior(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::UnsupportedType(_) => "unsupported-type",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NonDominant(_) => "non-dominant",
            Error::ResourceLimit(_) => "resource-limit",
            Error::InconsistentEmbedding(_) => "inconsistent-embedding",
            Error::InvalidEmbedding(_) => "validation",
            Error::NotInterior(_) => "not-interior",
            Error::InvalidArgument(_) => "invalid-argument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
