//! Command-line driver for `jacksonlab-core`: config handling, CSV target
//! ingestion, parallel sweeps and the CSV/JSON artifact formats.
//!
//! Every number in an artifact comes from a core operation; this crate only
//! formats. Outputs are byte-identical for identical configs.

pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;
pub mod parallel;

use std::io::Write;

pub use commands::{execute, Artifact};
pub use config::RunConfig;
pub use error::{CliError, Result};

/// Writes an artifact to `config.output`, or stdout.
pub fn write_artifact(config: &RunConfig, artifact: &Artifact) -> Result<()> {
    match &config.output {
        Some(path) => std::fs::write(path, &artifact.body).map_err(|e| CliError::io(path, e)),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(artifact.body.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e))
        }
    }
}

/// Executes and writes; verification failures surface as an error after the
/// manifest has been written.
pub fn run(config: &RunConfig) -> Result<()> {
    let artifact = execute(config)?;
    for w in &artifact.warnings {
        eprintln!("{w}");
    }
    write_artifact(config, &artifact)?;
    match artifact.verification_failure {
        Some(failed) => Err(CliError::Verification(failed)),
        None => Ok(()),
    }
}
