use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Zero, non-finite, duplicated or otherwise unusable coefficients.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two computations that must agree did not, or a variance came out negative.
    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    #[error("quadrature did not converge: {0}")]
    OracleConvergence(String),

    #[error("non-finite integrand sample at x = {0}")]
    NonFinite(f64),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
