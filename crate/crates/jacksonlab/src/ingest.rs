//! Piecewise-linear targets from two-column `x,y` CSV.
//!
//! A header row is optional, `#` starts a comment line. The knots must start at
//! `x = 0`, end at `x = 1` and strictly increase; periodic targets also need
//! `y(0) = y(1)`.

use std::io::Read;
use std::path::Path;

use jacksonlab_core::numerics::PiecewiseLinear;
use jacksonlab_core::TargetFunction;

use crate::config::TargetSpec;
use crate::error::{CliError, Result};

pub fn read_piecewise(reader: impl Read, periodic: bool) -> Result<PiecewiseLinear> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| CliError::usage(format!("csv: {e}")))?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if record.len() != 2 {
            return Err(CliError::usage(format!(
                "csv line {line}: expected 2 columns (x,y), found {}",
                record.len()
            )));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            // a non-numeric first row is a header
            _ if i == 0 => continue,
            _ => {
                return Err(CliError::usage(format!(
                    "csv line {line}: `{},{}` is not a pair of numbers",
                    &record[0], &record[1]
                )))
            }
        }
    }
    PiecewiseLinear::new(xs, ys, periodic).map_err(|e| CliError::usage(format!("csv: {e}")))
}

pub fn load_piecewise(path: &Path, periodic: bool) -> Result<PiecewiseLinear> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    read_piecewise(file, periodic).map_err(|e| match e {
        CliError::Usage(msg) => CliError::usage(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn load_target(spec: &TargetSpec) -> Result<TargetFunction> {
    match spec {
        TargetSpec::Corpus(name) => jacksonlab_core::numerics::corpus::by_name(name)
            .ok_or_else(|| CliError::usage(format!("unknown target `{name}`"))),
        TargetSpec::Csv { path, periodic } => {
            Ok(load_piecewise(path, *periodic)?.into_target(spec.label()))
        }
    }
}
