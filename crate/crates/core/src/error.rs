use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("disconnected cover: {0}")]
    DisconnectedCover(String),
    #[error("invalid quotient: {0}")]
    InvalidQuotient(String),
    #[error("automorphism does not lift: {0}")]
    NotInvariant(String),
    #[error("not a universal tower: {0}")]
    NotUniversalTower(String),
    #[error("scale cap exceeded: {what} is {requested}, cap is {cap}")]
    ScaleCap {
        what: String,
        requested: u128,
        cap: u128,
    },
    #[error("unsupported scale: {0}")]
    UnsupportedScale(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for refusals caused by configured size limits rather than bad input.
    pub fn is_scale_refusal(&self) -> bool {
        matches!(self, Error::ScaleCap { .. } | Error::UnsupportedScale(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}

pub(crate) fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
