use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {name} = {value} outside of its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unsupported operation: {0}")]
    Capability(String),

    #[error("moment of order {k} diverges (finite only for k >= {k_min})")]
    Divergence { k: usize, k_min: usize },

    #[error("series truncated at order {available}, order {requested} requested")]
    Truncation { requested: i32, available: i32 },

    #[error("series normalization: {0}")]
    Normalization(String),

    #[error("convergence budget exceeded: {0}")]
    ConvergenceBudget(String),

    #[error("estimation failed: {0}")]
    Estimation(String),

    #[error("integration failed at t = {t}: {reason}")]
    Integration { t: f64, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
