use thiserror::Error;

/// Everything that can go wrong while building, solving, or reading instances.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates an operation's preconditions.
    #[error("invalid input: {0}")]
    Usage(String),
    /// Exhaustive enumeration was asked to visit more columns than allowed.
    #[error("instance has {size} issues/columns but the enumeration cap is {cap}")]
    Capacity { size: usize, cap: usize },
    /// A file or string could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A realized election does not reproduce its margin matrix.
    #[error("realization residual {residual:e} exceeds tolerance {tolerance:e}")]
    Realization { residual: f64, tolerance: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
