use jacksonlab_core::qsim::{oracle_suite, OracleCheck};
use serde::Serialize;

use super::{to_json, Artifact, SCHEMA_VERSION};
use crate::config::RunConfig;
use crate::error::Result;

#[derive(Debug, Serialize)]
struct CheckDoc {
    name: &'static str,
    max_residual: f64,
    tolerance: f64,
    passed: bool,
}

impl From<OracleCheck> for CheckDoc {
    fn from(c: OracleCheck) -> Self {
        Self {
            name: c.name,
            max_residual: c.max_residual,
            tolerance: c.tolerance,
            passed: c.passed,
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyDoc {
    schema_version: u32,
    command: &'static str,
    seed: u64,
    passed: bool,
    checks: Vec<CheckDoc>,
}

pub fn run(config: &RunConfig) -> Result<Artifact> {
    let checks: Vec<CheckDoc> = oracle_suite()?.into_iter().map(CheckDoc::from).collect();
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    let doc = VerifyDoc {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        seed: config.seed,
        passed: failed.is_empty(),
        checks,
    };
    let mut artifact = Artifact::new(to_json(&doc));
    if !failed.is_empty() {
        artifact.verification_failure = Some(failed.join(", "));
    }
    Ok(artifact)
}
