//! Error type shared by every numerical routine in the crate.

use thiserror::Error;

/// Errors from special-function evaluation and the solvers built on top.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the function's domain. The message names the violated
    /// precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested value is an analytic pole (e.g. K_a at r = 1).
    #[error("pole: {0}")]
    Pole(String),

    /// An iteration or series did not converge within its budget.
    #[error("no convergence after {iterations} iterations: {context}")]
    NoConvergence { context: String, iterations: usize },

    /// A bracketing root-finder was given endpoints with equal signs.
    #[error("invalid bracket: {0}")]
    Bracket(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }
}
