use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("gamma ratio undefined: x - k = {0} is not positive")]
    GammaPole(String),

    #[error("a = {0} is not quantized: 1 - a must be a positive integer")]
    NotQuantized(String),

    #[error("state n = {n} is out of range: the potential holds {count} bound state(s)")]
    StateOutOfRange { n: usize, count: usize },

    #[error(
        "transform/Laguerre mismatch at coefficient {index}: transform gives {transform}, \
         Laguerre gives {laguerre}"
    )]
    LaguerreMismatch {
        index: usize,
        transform: String,
        laguerre: String,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error(
        "only {found} bound eigenvalue(s) below {threshold} on the grid, {requested} requested"
    )]
    InsufficientBoundStates {
        requested: usize,
        found: usize,
        threshold: f64,
    },

    #[error("adaptive quadrature did not converge: error estimate {error:e} after {intervals} subintervals")]
    QuadratureNonConvergence { error: f64, intervals: usize },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
