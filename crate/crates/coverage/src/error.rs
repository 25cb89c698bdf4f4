//! Crate-wide error type.

use alloc::string::String;

/// Errors surfaced by the analytic and simulation paths.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// A configuration field failed validation.
    #[error("invalid config field `{field}`: {reason}")]
    Config {
        field: &'static str,
        reason: String,
    },

    /// Adaptive quadrature exhausted its subdivision budget. Carries the
    /// best estimate and the error bound it could certify.
    #[error("quadrature did not reach tolerance: estimate {estimate}, error bound {error_bound}")]
    Accuracy { estimate: f64, error_bound: f64 },

    /// The requested quantity degenerates for this configuration
    /// (e.g. conditional interference moments with a single UAV).
    #[error("degenerate case: {0}")]
    Degenerate(&'static str),

    /// The Gamma moment-matching approximation requires a finite second
    /// shadowing moment, i.e. shadow shape q > 2.
    #[error("infinite variance: inverse-gamma shape q = {q} must exceed 2 for moment matching")]
    InfiniteVariance { q: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
