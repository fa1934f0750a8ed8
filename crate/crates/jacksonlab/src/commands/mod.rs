//! One module per subcommand. Each produces an [`Artifact`] in memory; nothing
//! is written until the whole artifact exists, so a failed run leaves no
//! partial file behind.

mod construct;
mod dist;
mod kernel;
mod sweep;
mod verify;

use jacksonlab_core::constructors::{
    build, error_report_for, Approximant, ConstructionParams, ErrorReport, Method,
};
use jacksonlab_core::numerics::{
    effective_algebraic_degree, effective_trig_degree, DegreeCheck, Grid, TargetFunction,
};
use serde::Serialize;

use crate::config::{RunConfig, Task};
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Output of a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub body: String,
    /// Printed to stderr; never part of the artifact.
    pub warnings: Vec<String>,
    /// Set when `verify` found a failing check; the body is still written.
    pub verification_failure: Option<String>,
}

impl Artifact {
    fn new(body: String) -> Self {
        Self {
            body,
            warnings: Vec::new(),
            verification_failure: None,
        }
    }
}

pub fn execute(config: &RunConfig) -> Result<Artifact> {
    match &config.task {
        Task::Construct { method, n, target } => construct::run(config, *method, *n, target),
        Task::Sweep { method, n, target } => sweep::run(config, *method, n, target),
        Task::Verify => verify::run(config),
        Task::Dist(req) => dist::run(config, req),
        Task::Kernel(req) => kernel::run(config, req),
    }
}

/// 17 significant digits, `.` decimal, no locale.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

/// Phase-estimation precision where the method has one.
fn precision_field(params: &ConstructionParams) -> Option<usize> {
    match params.method {
        Method::Bernstein => None,
        _ => Some(params.precision()),
    }
}

fn coins_field(params: &ConstructionParams) -> Option<usize> {
    match params.coins() {
        0 => None,
        c => Some(c),
    }
}

fn degenerate_warning(params: &ConstructionParams) -> Option<String> {
    params.is_degenerate().then(|| {
        format!(
            "warning: n={} is degenerate for {} (M=1): the approximant is the constant g(0)",
            params.n, params.method
        )
    })
}

/// An approximant with its error report and degree certificate.
struct Measured {
    approx: Approximant,
    report: ErrorReport,
    degree: DegreeCheck,
    probe_count: usize,
}

fn measure(
    g: &TargetFunction,
    params: ConstructionParams,
    grid: &Grid,
    seed: u64,
) -> Result<Measured> {
    let approx = build(g, params)?;
    let report = error_report_for(g, params, &approx, grid)?;
    let probe_count = 4 * params.n + 1;
    let degree = if params.method.is_trigonometric() {
        effective_trig_degree(&approx, params.n, probe_count, seed)?
    } else {
        effective_algebraic_degree(&approx, params.n, probe_count, seed)?
    };
    Ok(Measured {
        approx,
        report,
        degree,
        probe_count,
    })
}

#[derive(Debug, Serialize)]
struct ReportDoc {
    sup_err: f64,
    omega_ref: f64,
    omega_analytic: bool,
    ratio: f64,
    grid_size: usize,
}

impl From<&ErrorReport> for ReportDoc {
    fn from(r: &ErrorReport) -> Self {
        Self {
            sup_err: r.sup_err,
            omega_ref: r.omega_ref,
            omega_analytic: r.omega_analytic,
            ratio: r.ratio,
            grid_size: r.grid_size,
        }
    }
}

#[derive(Debug, Serialize)]
struct DegreeDoc {
    degree: usize,
    probe_count: usize,
    fresh_points: usize,
    residual: f64,
    relative_residual: f64,
}

impl DegreeDoc {
    fn new(m: &Measured, degree: usize) -> Self {
        Self {
            degree,
            probe_count: m.probe_count,
            fresh_points: jacksonlab_core::numerics::FRESH_POINTS,
            residual: m.degree.residual,
            relative_residual: m.degree.relative_residual(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.5), "-2.5000000000000000e0");
        assert_eq!(num(0.0), "0.0000000000000000e0");
        for x in [0.1, 1.0 / 3.0, 1e-300, 123456.789] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
