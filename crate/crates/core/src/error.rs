//! Crate-wide error type.

use thiserror::Error;

/// Known growth rate attached to a divergent prediction, so callers can fit
/// rates instead of failing outright.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum DivergenceRate {
    /// Variance grows like `coefficient * log(scale)`.
    Log { coefficient: f64 },
    /// Variance grows like `coefficient * scale`.
    Linear { coefficient: f64 },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("divergent prediction ({what}); rate {rate:?}")]
    Divergence {
        what: String,
        rate: Option<DivergenceRate>,
    },

    #[error("precision target unreachable: {0}")]
    Precision(String),

    #[error("linear algebra backend failure: {0}")]
    Linalg(String),

    #[error("eigensolver failed to converge after retries: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
