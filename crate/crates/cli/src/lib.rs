//! Reproducible experiment runner on top of `sle-core`.
//!
//! A run is described by an [`ExperimentConfig`]; its serialized form is
//! written into every output (a `# config=` line in CSV files, a `config`
//! field in JSON reports) so that the file alone reproduces the run.

mod config;
mod run;

use std::io;

pub use config::{Command, ExperimentConfig, TraceDomain};
pub use run::{run, RunSummary};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "SLE_OUTPUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: io::Error },
    #[error("numerical failure: {0}")]
    Numeric(#[from] sle_core::Error),
}

impl CliError {
    /// Process exit status: 2 for configuration and output problems, 3 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Output { .. } => 2,
            CliError::Numeric(_) => 3,
        }
    }
}
