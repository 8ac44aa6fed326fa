use thiserror::Error;

use crate::specfun::SpecFunError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("fine-structure constant {0} outside [0, 1)")]
    InvalidAlpha(f64),
    #[error("rest energy {0} eV must be positive and finite")]
    InvalidRestEnergy(f64),
    #[error("invalid state (n={n}, kappa={kappa}, m_j={m_j}): {reason}")]
    InvalidState {
        n: i64,
        kappa: i64,
        m_j: String,
        reason: &'static str,
    },
    #[error("energy {0} is not a bound-state value in (0, 1]")]
    InvalidEnergy(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("quadrature error bound {error_bound:e} exceeds {limit:e} (estimate {estimate})")]
    Quadrature {
        estimate: f64,
        error_bound: f64,
        limit: f64,
    },
}
