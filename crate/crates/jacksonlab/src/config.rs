//! Command-line flags, the optional TOML config file, and their merge into a
//! validated [`RunConfig`]. Flags win over the file; the file wins over
//! defaults.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use jacksonlab_core::constructors::Method;
use jacksonlab_core::numerics::corpus;
use jacksonlab_core::phase_dist::KernelKind;
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const DEFAULT_GRID: usize = 4097;
pub const MIN_GRID: usize = 65;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_KERNEL_POINTS: usize = 257;

#[derive(Debug, Parser)]
#[command(
    name = "jacksonlab",
    version,
    about = "Polynomial approximation from exact quantum outcome laws"
)]
pub struct Cli {
    /// TOML file with defaults; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for the fresh-point degree probes, recorded in every output.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Uniform grid size for error reports (at least 65).
    #[arg(long, global = true)]
    pub grid_size: Option<usize>,
    /// csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Build one approximant and report its coefficients and error.
    Construct(ApproxArgs),
    /// Error and degree reports over a range of n.
    Sweep(ApproxArgs),
    /// Cross-check closed forms against the simulator.
    Verify,
    /// Dump an outcome distribution.
    Dist(DistArgs),
    /// Tabulate a Fejér or Jackson kernel.
    Kernel(KernelArgs),
}

#[derive(Debug, Args, Default)]
pub struct ApproxArgs {
    #[arg(long)]
    pub method: Option<String>,
    /// Degree budget, or `start:stop:step` (inclusive) for sweeps.
    #[arg(long)]
    pub n: Option<String>,
    /// Corpus name or path to an `x,y` CSV file.
    #[arg(long)]
    pub target: Option<String>,
    /// Treat a CSV target as 1-periodic.
    #[arg(long)]
    pub periodic: bool,
}

#[derive(Debug, Args, Default)]
pub struct DistArgs {
    /// pe, counting-single or counting-median3.
    #[arg(long)]
    pub kind: Option<String>,
    /// Phase-estimation precision M.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Eigenphase x (pe only).
    #[arg(long, allow_hyphen_values = true)]
    pub phase: Option<f64>,
    /// String length N (counting only).
    #[arg(long)]
    pub len: Option<usize>,
    /// Hamming weight k (counting only); all weights when omitted.
    #[arg(long)]
    pub weight: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct KernelArgs {
    /// fejer or jackson.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Number of abscissae in [0, 1], endpoints included.
    #[arg(long)]
    pub points: Option<usize>,
}

/// `n` as written in a config file: a number or a range string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum NValue {
    Int(u64),
    Text(String),
}

impl NValue {
    fn into_text(self) -> String {
        match self {
            NValue::Int(v) => v.to_string(),
            NValue::Text(s) => s,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ApproxSection {
    method: Option<String>,
    n: Option<NValue>,
    target: Option<String>,
    periodic: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistSection {
    kind: Option<String>,
    precision: Option<usize>,
    phase: Option<f64>,
    len: Option<usize>,
    weight: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelSection {
    kind: Option<String>,
    order: Option<usize>,
    points: Option<usize>,
}

/// Layout of the optional config file.
///
/// ```toml
/// seed = 7
/// grid_size = 8193
///
/// [sweep]
/// method = "counting_median3"
/// n = "6:36:6"
/// target = "abs-half"
/// ```
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    seed: Option<u64>,
    grid_size: Option<usize>,
    format: Option<String>,
    output: Option<PathBuf>,
    #[serde(default)]
    construct: ApproxSection,
    #[serde(default)]
    sweep: ApproxSection,
    #[serde(default)]
    dist: DistSection,
    #[serde(default)]
    kernel: KernelSection,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::usage(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Construct,
    Sweep,
    Verify,
    Dist,
    Kernel,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Sweep => "sweep",
            Command::Verify => "verify",
            Command::Dist => "dist",
            Command::Kernel => "kernel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::usage(format!(
                "unknown format `{s}` (valid: csv, json)"
            ))),
        }
    }
}

/// Inclusive `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub stop: usize,
    pub step: usize,
}

impl NRange {
    pub fn single(n: usize) -> Self {
        Self {
            start: n,
            stop: n,
            step: 1,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || {
            CliError::usage(format!(
                "bad n `{s}`: expected a positive integer or start:stop:step"
            ))
        };
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let parts: Vec<&str> = s.split(':').collect();
        let r = match parts.as_slice() {
            [n] => Self::single(num(n)?),
            [a, b] => Self {
                start: num(a)?,
                stop: num(b)?,
                step: 1,
            },
            [a, b, c] => Self {
                start: num(a)?,
                stop: num(b)?,
                step: num(c)?,
            },
            _ => return Err(bad()),
        };
        if r.start == 0 {
            return Err(CliError::usage(format!(
                "bad n `{s}`: n must be at least 1"
            )));
        }
        if r.step == 0 || r.stop < r.start {
            return Err(CliError::usage(format!(
                "bad n `{s}`: need stop >= start and step >= 1"
            )));
        }
        Ok(r)
    }

    pub fn is_single(&self) -> bool {
        self.start == self.stop
    }

    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.stop).step_by(self.step).collect()
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}:{}:{}", self.start, self.stop, self.step)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpec {
    Corpus(String),
    Csv { path: PathBuf, periodic: bool },
}

impl TargetSpec {
    /// Corpus names take priority; anything ending in `.csv` is a file.
    pub fn parse(s: &str, periodic: bool) -> Result<Self> {
        if corpus::by_name(s).is_some() {
            if periodic {
                return Err(CliError::usage(
                    "--periodic only applies to CSV targets; corpus targets carry their own domain",
                ));
            }
            return Ok(TargetSpec::Corpus(s.to_string()));
        }
        if s.to_ascii_lowercase().ends_with(".csv") {
            return Ok(TargetSpec::Csv {
                path: PathBuf::from(s),
                periodic,
            });
        }
        Err(CliError::usage(format!(
            "unknown target `{s}` (valid: {}, or a path ending in .csv)",
            corpus::listing()
        )))
    }

    pub fn label(&self) -> String {
        match self {
            TargetSpec::Corpus(name) => name.clone(),
            TargetSpec::Csv { path, .. } => path.display().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistKind {
    Pe,
    CountingSingle,
    CountingMedian3,
}

impl DistKind {
    pub fn name(self) -> &'static str {
        match self {
            DistKind::Pe => "pe",
            DistKind::CountingSingle => "counting-single",
            DistKind::CountingMedian3 => "counting-median3",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        [
            DistKind::Pe,
            DistKind::CountingSingle,
            DistKind::CountingMedian3,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| {
            CliError::usage(format!(
                "unknown dist kind `{s}` (valid: pe, counting-single, counting-median3)"
            ))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DistRequest {
    Pe {
        precision: usize,
        phase: f64,
    },
    Counting {
        kind: DistKind,
        len: usize,
        precision: usize,
        weight: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelRequest {
    pub kind: KernelKind,
    pub order: usize,
    pub points: usize,
}

/// Per-command payload, validated.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Construct {
        method: Method,
        n: usize,
        target: TargetSpec,
    },
    Sweep {
        method: Method,
        n: NRange,
        target: TargetSpec,
    },
    Verify,
    Dist(DistRequest),
    Kernel(KernelRequest),
}

/// A fully validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub grid_size: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub fn command(&self) -> Command {
        match self.task {
            Task::Construct { .. } => Command::Construct,
            Task::Sweep { .. } => Command::Sweep,
            Task::Verify => Command::Verify,
            Task::Dist(_) => Command::Dist,
            Task::Kernel(_) => Command::Kernel,
        }
    }

    /// Loads `--config` if given, then merges.
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        Self::resolve(cli, file)
    }

    pub fn resolve(cli: Cli, file: FileConfig) -> Result<Self> {
        let seed = cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
        let grid_size = cli.grid_size.or(file.grid_size).unwrap_or(DEFAULT_GRID);
        if grid_size < MIN_GRID {
            return Err(CliError::usage(format!(
                "grid size {grid_size} is below the minimum of {MIN_GRID}"
            )));
        }
        let output = cli.output.or(file.output);
        let format = cli
            .format
            .or(file.format)
            .map(|s| Format::parse(&s))
            .transpose()?;

        let (task, allowed, default_format) = match cli.command {
            Sub::Construct(args) => {
                let (method, n, target) = approx(args, file.construct, "construct")?;
                if !n.is_single() {
                    return Err(CliError::usage(
                        "construct takes a single n; use sweep for ranges",
                    ));
                }
                let task = Task::Construct {
                    method,
                    n: n.start,
                    target,
                };
                (task, &[Format::Json][..], Format::Json)
            }
            Sub::Sweep(args) => {
                let (method, n, target) = approx(args, file.sweep, "sweep")?;
                let task = Task::Sweep { method, n, target };
                (task, &[Format::Csv, Format::Json][..], Format::Csv)
            }
            Sub::Verify => (Task::Verify, &[Format::Json][..], Format::Json),
            Sub::Dist(args) => (
                Task::Dist(dist(args, file.dist)?),
                &[Format::Csv][..],
                Format::Csv,
            ),
            Sub::Kernel(args) => (
                Task::Kernel(kernel(args, file.kernel)?),
                &[Format::Csv][..],
                Format::Csv,
            ),
        };
        let format = format.unwrap_or(default_format);
        if !allowed.contains(&format) {
            let valid: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
            return Err(CliError::usage(format!(
                "format {} is not available for this command (valid: {})",
                format.name(),
                valid.join(", ")
            )));
        }
        Ok(Self {
            task,
            grid_size,
            output,
            format,
            seed,
        })
    }
}

fn required<T>(v: Option<T>, flag: &str, command: &str) -> Result<T> {
    v.ok_or_else(|| CliError::usage(format!("{command} needs --{flag}")))
}

fn approx(
    args: ApproxArgs,
    section: ApproxSection,
    command: &str,
) -> Result<(Method, NRange, TargetSpec)> {
    let method: String = required(args.method.or(section.method), "method", command)?;
    let method = method.parse::<Method>().map_err(|_| {
        CliError::usage(format!(
            "unknown method `{method}` (valid: {})",
            Method::listing()
        ))
    })?;
    let n = required(args.n.or(section.n.map(NValue::into_text)), "n", command)?;
    let n = NRange::parse(&n)?;
    let target = required(args.target.or(section.target), "target", command)?;
    let periodic = args.periodic || section.periodic.unwrap_or(false);
    let target = TargetSpec::parse(&target, periodic)?;
    Ok((method, n, target))
}

fn dist(args: DistArgs, section: DistSection) -> Result<DistRequest> {
    let kind = DistKind::parse(&required(args.kind.or(section.kind), "kind", "dist")?)?;
    let precision = required(args.precision.or(section.precision), "precision", "dist")?;
    if precision == 0 {
        return Err(CliError::usage("precision must be at least 1"));
    }
    let phase = args.phase.or(section.phase);
    let len = args.len.or(section.len);
    let weight = args.weight.or(section.weight);
    match kind {
        DistKind::Pe => {
            if len.is_some() || weight.is_some() {
                return Err(CliError::usage(
                    "--len and --weight apply to counting kinds only",
                ));
            }
            let phase = required(phase, "phase", "dist --kind pe")?;
            if !phase.is_finite() {
                return Err(CliError::usage("phase must be finite"));
            }
            Ok(DistRequest::Pe { precision, phase })
        }
        _ => {
            if phase.is_some() {
                return Err(CliError::usage("--phase applies to --kind pe only"));
            }
            let len = required(len, "len", "dist")?;
            if len == 0 {
                return Err(CliError::usage("len must be at least 1"));
            }
            if let Some(k) = weight {
                if k > len {
                    return Err(CliError::usage(format!("weight {k} exceeds len {len}")));
                }
            }
            Ok(DistRequest::Counting {
                kind,
                len,
                precision,
                weight,
            })
        }
    }
}

fn kernel(args: KernelArgs, section: KernelSection) -> Result<KernelRequest> {
    let kind = match required(args.kind.or(section.kind), "kind", "kernel")?.as_str() {
        "fejer" => KernelKind::Fejer,
        "jackson" => KernelKind::Jackson,
        other => {
            return Err(CliError::usage(format!(
                "unknown kernel `{other}` (valid: fejer, jackson)"
            )))
        }
    };
    let order = required(args.order.or(section.order), "order", "kernel")?;
    if order == 0 {
        return Err(CliError::usage("kernel order must be at least 1"));
    }
    let points = args
        .points
        .or(section.points)
        .unwrap_or(DEFAULT_KERNEL_POINTS);
    if points < 2 {
        return Err(CliError::usage("kernel needs at least 2 points"));
    }
    Ok(KernelRequest {
        kind,
        order,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("jacksonlab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn ranges() {
        assert_eq!(
            NRange::parse("6:36:6").unwrap().values(),
            vec![6, 12, 18, 24, 30, 36]
        );
        assert_eq!(NRange::parse("3:5").unwrap().values(), vec![3, 4, 5]);
        assert_eq!(NRange::parse("8").unwrap().values(), vec![8]);
        assert_eq!(NRange::parse("6:37:6").unwrap().values().last(), Some(&36));
        for bad in ["0", "5:3", "1:2:0", "a", "1:2:3:4", ""] {
            assert!(NRange::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn flags_override_file() {
        let file = FileConfig::parse(
            "seed = 9\ngrid_size = 129\n[sweep]\nmethod = \"bernstein\"\nn = \"4:8:2\"\ntarget = \"sqrt\"\n",
        )
        .unwrap();
        let c = RunConfig::resolve(cli(&["sweep", "--seed", "3", "--n", "10"]), file).unwrap();
        assert_eq!(c.seed, 3);
        assert_eq!(c.grid_size, 129);
        assert_eq!(
            c.task,
            Task::Sweep {
                method: Method::Bernstein,
                n: NRange::single(10),
                target: TargetSpec::Corpus("sqrt".into())
            }
        );
    }

    #[test]
    fn integer_n_in_file() {
        let file =
            FileConfig::parse("[construct]\nmethod = \"bernstein\"\nn = 8\ntarget = \"sqrt\"\n")
                .unwrap();
        let c = RunConfig::resolve(cli(&["construct"]), file).unwrap();
        assert!(matches!(c.task, Task::Construct { n: 8, .. }));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(FileConfig::parse("sed = 1\n").is_err());
        assert!(FileConfig::parse("[sweep]\nmethd = \"x\"\n").is_err());
    }

    #[test]
    fn validation_messages_list_valid_names() {
        let err = RunConfig::resolve(
            cli(&[
                "construct",
                "--method",
                "remez",
                "--n",
                "4",
                "--target",
                "sqrt",
            ]),
            FileConfig::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("counting_median3"));
        assert_eq!(err.exit_code(), 2);

        let err = RunConfig::resolve(
            cli(&[
                "construct",
                "--method",
                "bernstein",
                "--n",
                "4",
                "--target",
                "sine",
            ]),
            FileConfig::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("abs-half"));
    }

    #[test]
    fn grid_floor_and_formats() {
        let base = [
            "sweep",
            "--method",
            "bernstein",
            "--n",
            "4",
            "--target",
            "sqrt",
        ];
        let mut small = base.to_vec();
        small.extend(["--grid-size", "64"]);
        assert!(RunConfig::resolve(cli(&small), FileConfig::default()).is_err());
        let mut json = base.to_vec();
        json.extend(["--format", "json"]);
        assert_eq!(
            RunConfig::resolve(cli(&json), FileConfig::default())
                .unwrap()
                .format,
            Format::Json
        );
        assert!(
            RunConfig::resolve(cli(&["verify", "--format", "csv"]), FileConfig::default()).is_err()
        );
        let c = RunConfig::resolve(cli(&base), FileConfig::default()).unwrap();
        assert_eq!(
            (c.format, c.grid_size, c.seed),
            (Format::Csv, DEFAULT_GRID, DEFAULT_SEED)
        );
    }

    #[test]
    fn construct_rejects_ranges() {
        let c = cli(&[
            "construct",
            "--method",
            "bernstein",
            "--n",
            "4:8:2",
            "--target",
            "sqrt",
        ]);
        assert!(RunConfig::resolve(c, FileConfig::default()).is_err());
    }

    #[test]
    fn dist_requests() {
        let c = RunConfig::resolve(
            cli(&[
                "dist",
                "--kind",
                "pe",
                "--precision",
                "8",
                "--phase",
                "-0.25",
            ]),
            FileConfig::default(),
        )
        .unwrap();
        assert_eq!(
            c.task,
            Task::Dist(DistRequest::Pe {
                precision: 8,
                phase: -0.25
            })
        );
        for bad in [
            &["dist", "--kind", "pe", "--precision", "8"][..],
            &["dist", "--kind", "counting-single", "--precision", "4"],
            &[
                "dist",
                "--kind",
                "counting-single",
                "--precision",
                "4",
                "--len",
                "4",
                "--weight",
                "5",
            ],
            &["dist", "--kind", "binomial", "--precision", "4"],
        ] {
            assert!(
                RunConfig::resolve(cli(bad), FileConfig::default()).is_err(),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn csv_targets() {
        assert_eq!(
            TargetSpec::parse("data/f.CSV", true).unwrap(),
            TargetSpec::Csv {
                path: "data/f.CSV".into(),
                periodic: true
            }
        );
        assert!(TargetSpec::parse("triangle", true).is_err());
    }
}
