use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gamma function or Pochhammer denominator hit a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// An argument lies outside the domain where the routine is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not meet its tail criterion within the allowed order.
    #[error("series did not converge within {order} terms ({what})")]
    NonConvergence { what: String, order: usize },

    /// An index set or quadrature grid would exceed the configured cap.
    #[error("budget exceeded: {what} needs {needed} points, cap is {cap}")]
    BudgetExceeded { what: String, needed: u128, cap: u128 },

    /// The parameters are valid but outside the regime the numerics can certify.
    #[error("outside certified regime: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }

    pub(crate) fn no_conv(what: impl Into<String>, order: usize) -> Self {
        Error::NonConvergence { what: what.into(), order }
    }
}
