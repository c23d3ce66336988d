use thiserror::Error;

use crate::lp::DualCertificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("strategy not applicable: {0}")]
    Strategy(String),

    #[error("lift search infeasible: triangulation is not coherent ({} multipliers in certificate)", .0.multipliers.len())]
    Infeasible(Box<DualCertificate>),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
