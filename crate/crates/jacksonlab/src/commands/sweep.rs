use jacksonlab_core::constructors::{ConstructionParams, Method};
use jacksonlab_core::numerics::Grid;
use rayon::prelude::*;
use serde::Serialize;

use super::{degenerate_warning, measure, num, precision_field, to_json, Artifact, SCHEMA_VERSION};
use crate::config::{Format, NRange, RunConfig, TargetSpec};
use crate::error::Result;
use crate::ingest::load_target;
use crate::parallel::with_pool;

pub const HEADER: &str = "method,n,M,sup_err,omega_ref,ratio,degree_residual,grid_size,seed";

#[derive(Debug, Serialize)]
struct Row {
    method: &'static str,
    n: usize,
    #[serde(rename = "M")]
    precision: Option<usize>,
    sup_err: f64,
    omega_ref: f64,
    ratio: f64,
    degree_residual: f64,
    grid_size: usize,
    seed: u64,
    degenerate: bool,
}

impl Row {
    fn csv(&self) -> String {
        let m = self.precision.map(|m| m.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.method,
            self.n,
            m,
            num(self.sup_err),
            num(self.omega_ref),
            num(self.ratio),
            num(self.degree_residual),
            self.grid_size,
            self.seed
        )
    }
}

#[derive(Debug, Serialize)]
struct SweepDoc<'a> {
    schema_version: u32,
    command: &'static str,
    method: &'static str,
    n: String,
    target: String,
    seed: u64,
    grid_size: usize,
    rows: &'a [Row],
}

pub fn run(
    config: &RunConfig,
    method: Method,
    range: &NRange,
    target: &TargetSpec,
) -> Result<Artifact> {
    let g = load_target(target)?;
    let grid = Grid::uniform(config.grid_size)?;
    let params = range
        .values()
        .into_iter()
        .map(|n| ConstructionParams::new(method, n))
        .collect::<jacksonlab_core::Result<Vec<_>>>()?;

    // rows are independent; collect keeps them in n order
    let rows = with_pool(|| {
        params
            .par_iter()
            .map(|&p| {
                let m = measure(&g, p, &grid, config.seed)?;
                Ok(Row {
                    method: method.name(),
                    n: p.n,
                    precision: precision_field(&p),
                    sup_err: m.report.sup_err,
                    omega_ref: m.report.omega_ref,
                    ratio: m.report.ratio,
                    degree_residual: m.degree.relative_residual(),
                    grid_size: m.report.grid_size,
                    seed: config.seed,
                    degenerate: m.report.degenerate,
                })
            })
            .collect::<Result<Vec<Row>>>()
    })??;

    let body = match config.format {
        Format::Csv => {
            let mut s = String::from(HEADER);
            s.push('\n');
            for row in &rows {
                s.push_str(&row.csv());
                s.push('\n');
            }
            s
        }
        Format::Json => to_json(&SweepDoc {
            schema_version: SCHEMA_VERSION,
            command: "sweep",
            method: method.name(),
            n: range.to_string(),
            target: target.label(),
            seed: config.seed,
            grid_size: config.grid_size,
            rows: &rows,
        }),
    };
    let mut artifact = Artifact::new(body);
    artifact
        .warnings
        .extend(params.iter().filter_map(degenerate_warning));
    Ok(artifact)
}
