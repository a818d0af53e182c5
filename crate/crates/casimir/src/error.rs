//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its subdivision budget before reaching
    /// the requested tolerance. The partial value and its error estimate are
    /// carried along so callers can decide whether to accept them.
    #[error("quadrature did not converge: value ≈ {value:e}, error ≈ {error_estimate:e}")]
    NonConvergence { value: f64, error_estimate: f64 },

    /// The requested point lies outside the validity region of the selected
    /// approximation or engine branch.
    #[error("regime error: {0}")]
    Regime(String),

    /// A truncated series tail estimate exceeds the requested tolerance.
    #[error("truncation: tail estimate {tail:e} exceeds tolerance {tolerance:e}")]
    Truncation { tail: f64, tolerance: f64 },

    /// Finite-difference derivative did not stabilize under step halving.
    #[error("finite-difference step too large: h = {step:e}, disagreement = {disagreement:e}")]
    StepTooLarge { step: f64, disagreement: f64 },

    /// Scenario configuration is invalid; the message names the offending key.
    #[error("config error: {0}")]
    Config(String),
}
