use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid physical configuration (non-positive masses, bad config file).
    #[error("configuration error: {0}")]
    Config(String),

    /// Input outside the domain of validity of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iteration or quadrature failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Integration stopped before `t_end`; the partial trajectory is kept.
    #[error("integration aborted at t = {t}: {reason}")]
    IntegrationAborted {
        t: f64,
        reason: String,
        partial: Box<crate::three_body::Trajectory>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
