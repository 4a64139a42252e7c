use thiserror::Error;

/// Errors raised by the exact routines in this crate.
///
/// Check *failures* (a relation that does not hold, an invariant that does
/// not commute) are reported as data in the various report types; these
/// errors are reserved for misuse and for internal consistency violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("series offsets {0} and {1} are not congruent mod 1")]
    IncongruentOffsets(String, String),

    /// An exact identity that must hold by construction failed. This always
    /// points at a convention or transcription bug.
    #[error("consistency assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn assertion<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Assertion(msg.into()))
}
