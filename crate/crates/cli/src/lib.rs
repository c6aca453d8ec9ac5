//! Command implementations behind the `bures` binary.
//!
//! Each command returns a [`Report`] that `main` prints as one JSON document
//! on standard output; failures map to the exit codes in [`CliError`].

pub mod commands;
pub mod report;

pub use commands::{cmd_bounds, cmd_empirical, cmd_minimizer, cmd_verify, GeneratorArg};
pub use report::{EmpiricalSummary, Inputs, Report};

use std::fmt;

/// Error with the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unparseable input (exit 2).
    Parse(String),
    /// Dimension, definiteness or flag-value violations (exit 3).
    Invalid(String),
    /// Sample count above the assignment cap (exit 4).
    TooLarge(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::TooLarge(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Invalid(m) | CliError::TooLarge(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<bures::Error> for CliError {
    fn from(e: bures::Error) -> Self {
        match e {
            bures::Error::Parse { .. } => CliError::Parse(e.to_string()),
            bures::Error::TooLarge { .. } => CliError::TooLarge(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
