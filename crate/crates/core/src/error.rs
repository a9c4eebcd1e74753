use thiserror::Error;

/// Errors raised by the analytic and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op} did not converge: estimate {estimate:e}, error bound {error:e}")]
    NonConvergence {
        op: &'static str,
        estimate: f64,
        error: f64,
    },

    #[error("{op} requires a finite speed measure (stationary law unavailable for {model})")]
    Unavailable { op: &'static str, model: String },

    #[error("{op} is not implemented for {model}")]
    Unsupported { op: &'static str, model: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("step budget of {budget} exceeded in {op}")]
    Budget { op: &'static str, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

/// Rejects arguments that are not finite and strictly positive.
pub(crate) fn require_positive(op: &'static str, name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(domain(op, format!("{name} must be finite and > 0, got {value}")))
    }
}

pub(crate) fn require_nonnegative(op: &'static str, name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(domain(op, format!("{name} must be finite and >= 0, got {value}")))
    }
}
