use thiserror::Error;

/// Failure modes shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("invalid element: rank {rank} outside a carrier of size {size}")]
    InvalidElement { rank: usize, size: usize },
    #[error("incompatible structures: {0}")]
    IncompatibleStructures(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
