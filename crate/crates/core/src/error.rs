use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands that do not fit together: different rings, mismatched
    /// endpoints, non-composable arrows.
    #[error("structural error: {0}")]
    Structural(String),
    /// A value outside an operation's domain (non-nilpotent argument,
    /// non-invertible constant term, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A leg of a correspondence lacks the class (smooth, proper, ...) the
    /// operation needs.
    #[error("unsupported leg: {0}")]
    UnsupportedLeg(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
