//! CLI error classification driving the exit-code contract:
//! 0 pass, 1 verification failure, 2 config error, 3 resource guard.

use thiserror::Error;

use spintree_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("{0}")]
    Guard(String),
}

impl CliError {
    /// Core errors are configuration problems except the dense-dimension
    /// guard, which has its own exit code.
    pub fn from_core(err: CoreError) -> CliError {
        match err {
            CoreError::DimensionOverflow { dim, limit } => CliError::Guard(format!(
                "Hilbert-space dimension {dim} exceeds the limit {limit} \
                 (set SPINTREE_MAX_DIM to raise it)"
            )),
            other => CliError::Config(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Guard(_) => 3,
        }
    }
}
