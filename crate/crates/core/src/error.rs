use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: dimension mismatch, zero vectors, bad indices.
    #[error("input error: {0}")]
    Input(String),
    /// A mathematical precondition does not hold (not nef, not pseudo-effective, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Something that valid surface models cannot produce.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
