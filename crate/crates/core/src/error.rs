use thiserror::Error;

use crate::quadrature::QuadError;
use crate::specfun::SpecfunError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),

    #[error(transparent)]
    Quadrature(#[from] QuadError),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate interval: a = b = {0}")]
    DegenerateInterval(f64),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("non-finite sample g({at}) = {value}")]
    NonFiniteSample { at: f64, value: f64 },

    #[error("unknown function `{0}`")]
    UnknownFunction(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by a failed numerical procedure (quadrature,
    /// series convergence) rather than by invalid input.
    pub fn is_numerical_failure(&self) -> bool {
        matches!(
            self,
            Error::Quadrature(_) | Error::Specfun(SpecfunError::NonConvergence { .. })
        )
    }
}
