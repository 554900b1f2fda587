//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A model or run parameter violates its constraints.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        /// Name of the offending parameter.
        name: &'static str,
        /// Why it was rejected.
        reason: String,
    },

    /// A state index outside `{0, .., N}` (or the reflected chain's range).
    #[error("state {state} out of range 0..={max}")]
    StateOutOfRange {
        /// Offending state.
        state: usize,
        /// Largest admissible state.
        max: usize,
    },

    /// An argument outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two vectors that must share a length do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch {
        /// Length of the first operand.
        left: usize,
        /// Length of the second operand.
        right: usize,
    },

    /// The requested workload exceeds the configured budget.
    #[error("infeasible workload: {0}")]
    Infeasible(String),

    /// An internal numerical guard tripped (e.g. truncation budget exceeded).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Failed to read or write an output artifact.
    #[error("i/o failure: {0}")]
    Io(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
