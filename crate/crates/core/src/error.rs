use thiserror::Error;

/// Errors raised by the algebra engine and the script front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed call: mismatched variable counts, bad dimensions, wrong value kinds.
    #[error("usage error: {0}")]
    Usage(String),
    /// The relations handed to `make_ring` are not a regular sequence.
    #[error("not a complete intersection: {0}")]
    NotCompleteIntersection(String),
    /// A documented precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A bounded search (regular sequences, periodicity, splitting) ran out of budget.
    #[error("resource limit reached: {0}")]
    Resource(String),
    /// The decision procedure cannot answer for this input shape.
    #[error("undecided: {0}")]
    Undecided(String),
    /// The truncation level is too small for the module at hand.
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    /// Script syntax error.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// An internal consistency check failed. This is always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
