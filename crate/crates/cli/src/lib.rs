//! Verification runner for the quatcs library: suites, configuration and
//! report encodings.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{Config, FileConfig};
pub use report::{emit_report, CheckRecord, Format, SuiteReport};
pub use suites::{run_suite, Suite};

/// Errors the binary maps onto exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Compute(#[from] quatcs::QuatError),
    #[error("cannot write report: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Output(_) => 3,
            CliError::Compute(_) => 1,
        }
    }
}
