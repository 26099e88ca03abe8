//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of validation, range checks, and iterative numerics.
#[derive(Debug, Error)]
pub enum Error {
    /// An input failed validation; `field` names the offending argument.
    #[error("invalid {field}: {reason}")]
    InvalidInput { field: &'static str, reason: String },

    /// A requested time or coordinate fell outside the covered range.
    #[error("{what} out of range: {reason}")]
    OutOfRange { what: &'static str, reason: String },

    /// A requested expansion order exceeds the supported cap.
    #[error("order {n} exceeds the supported maximum {max}")]
    UnsupportedOrder { n: usize, max: usize },

    /// Two sequences that must match in length do not.
    #[error("length mismatch in {context}: {left} vs {right}")]
    LengthMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    /// An iterative routine failed to reach its tolerance.
    #[error("no convergence in {what}: worst residual {residual:.3e}")]
    NoConvergence { what: &'static str, residual: f64 },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
