use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto three families the CLI distinguishes by exit code:
/// malformed input and domain violations (bad data), capability limits
/// (the partition measure refusing a dimension it cannot enumerate), and
/// numeric failures from the eigensolver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capability limit: {0}")]
    Capability(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),
}

pub type Result<T> = std::result::Result<T, Error>;
