use jacksonlab_core::constructors::{coefficients, Coefficients, ConstructionParams, Method};
use jacksonlab_core::numerics::Grid;
use serde::Serialize;

use super::{
    coins_field, degenerate_warning, measure, precision_field, to_json, Artifact, DegreeDoc,
    ReportDoc, SCHEMA_VERSION,
};
use crate::config::{RunConfig, TargetSpec};
use crate::error::Result;
use crate::ingest::load_target;

#[derive(Debug, Serialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
enum CoeffDoc {
    /// `p(x) = sum_k c_k T_k(2x - 1)`.
    Chebyshev { coeffs: Vec<f64> },
    /// `p(x) = sum_{k=-d}^{d} (re_k + i im_k) e^{2 pi i k x}`, listed from `-d`.
    Fourier {
        degree: usize,
        re: Vec<f64>,
        im: Vec<f64>,
    },
}

impl From<Coefficients> for CoeffDoc {
    fn from(c: Coefficients) -> Self {
        match c {
            Coefficients::Chebyshev(p) => CoeffDoc::Chebyshev {
                coeffs: p.coeffs().to_vec(),
            },
            Coefficients::Fourier(p) => CoeffDoc::Fourier {
                degree: p.degree(),
                re: p.coeffs().iter().map(|c| c.re).collect(),
                im: p.coeffs().iter().map(|c| c.im).collect(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct ConstructDoc {
    schema_version: u32,
    command: &'static str,
    method: &'static str,
    n: usize,
    #[serde(rename = "M")]
    precision: Option<usize>,
    #[serde(rename = "N")]
    coins: Option<usize>,
    target: String,
    degree_bound: usize,
    degenerate: bool,
    seed: u64,
    coefficients: CoeffDoc,
    degree_check: DegreeDoc,
    error_report: ReportDoc,
}

pub fn run(
    config: &RunConfig,
    method: Method,
    n: usize,
    target: &TargetSpec,
) -> Result<super::Artifact> {
    let g = load_target(target)?;
    let params = ConstructionParams::new(method, n)?;
    let grid = Grid::uniform(config.grid_size)?;
    let m = measure(&g, params, &grid, config.seed)?;
    let doc = ConstructDoc {
        schema_version: SCHEMA_VERSION,
        command: "construct",
        method: method.name(),
        n,
        precision: precision_field(&params),
        coins: coins_field(&params),
        target: target.label(),
        degree_bound: params.degree_bound(),
        degenerate: params.is_degenerate(),
        seed: config.seed,
        coefficients: coefficients(&m.approx, params)?.into(),
        degree_check: DegreeDoc::new(&m, n),
        error_report: (&m.report).into(),
    };
    let mut artifact = Artifact::new(to_json(&doc));
    artifact.warnings.extend(degenerate_warning(&params));
    Ok(artifact)
}
