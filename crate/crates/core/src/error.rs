use thiserror::Error;

/// Errors raised by the special functions, discretizations and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series hit its term budget before meeting the tolerance.
    #[error("series did not converge after {terms} terms (partial sum {partial_sum:e})")]
    Convergence { terms: usize, partial_sum: f64 },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    /// A zero pivot appeared during tridiagonal elimination.
    #[error("zero pivot in tridiagonal elimination at row {0}")]
    ZeroPivot(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

/// Validates an order of differentiation in the open interval (0, 1).
pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        domain(format!("alpha must lie in (0, 1), got {alpha}"))
    }
}
