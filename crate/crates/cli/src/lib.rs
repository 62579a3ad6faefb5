//! Batch verification runner for the exceptional structures: named suites of checks,
//! calibration files and structure dumps. The `exceptional` binary is a thin wrapper.

pub mod calibration;
pub mod dump;
pub mod report;
pub mod suites;

pub use report::{Check, Status, VerificationReport};
pub use suites::{run_suite, RunOptions, Suite};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("calibration missing or invalid: {0}")]
    MissingCalibration(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("computation failed: {0}")]
    Computation(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::MissingCalibration(_) => 3,
            CliError::Calibration(_) => 4,
            CliError::Computation(_) | CliError::Io(_) => 1,
        }
    }
}
