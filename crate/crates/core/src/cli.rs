//! Command-line front end: argument parsing, run configuration, table
//! assembly and CSV/JSON emission.
//!
//! Every invocation resolves to a [`RunConfig`]. JSON output embeds that
//! config under `meta.config`, and `--config` accepts either such an output
//! file or a bare config, so any table can be regenerated from itself.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::bound::{
    bound_energy, printed_energy, wavefunction, Coordinate, Measure, QuantumNumbers,
};
use crate::error::{Error, ErrorKind};
use crate::format::{self, round_sig, sig};
use crate::model::{approx_profile, ApproxScheme, PotentialParams, Variant};
use crate::oracle::{numeric_phase, numerov_eigen, validate_table, SolverConfig, TABLE_ONE};
use crate::scatter::{asymptotic_amplitude, phase_shift, reduce_mod_pi, scatter_state};

/// Environment variable naming the directory relative `--output` paths resolve against.
pub const OUTPUT_DIR_ENV: &str = "HELLMANN_OUTPUT_DIR";

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ConventionName {
    /// m = 1/2, ħ = 1, a and b doubled.
    Table1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Spectrum,
    Wavefunction,
    Phase,
    Validate,
    ApproxProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRange {
    pub min: u32,
    pub max: u32,
}

impl IndexRange {
    fn values(&self) -> impl Iterator<Item = u32> {
        self.min..=self.max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordinateKind {
    /// Mapped variable u = e^{−λr}.
    U,
    /// Physical radius.
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordinateGrid {
    pub kind: CoordinateKind,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl CoordinateGrid {
    fn values(&self) -> Vec<f64> {
        let h = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + h * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranges {
    pub n: IndexRange,
    pub ell: IndexRange,
    #[serde(default)]
    pub energies: Vec<f64>,
    #[serde(default)]
    pub coordinate: Option<CoordinateGrid>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Options {
    #[serde(default)]
    pub with_oracle: bool,
    #[serde(default)]
    pub normalize: Option<Measure>,
    #[serde(default)]
    pub scheme: Option<ApproxScheme>,
    /// Recorded for provenance; `params` already carry the convention.
    #[serde(default)]
    pub convention: Option<ConventionName>,
}

/// Fully resolved description of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandName,
    pub params: PotentialParams,
    pub variant: Variant,
    pub ranges: Ranges,
    #[serde(default)]
    pub options: Options,
    #[serde(default)]
    pub output: OutputFormat,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "hellmann",
    version,
    about = "Spectra, wave functions and phase shifts of the Hellmann potential"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Output file (standard output if omitted). Relative paths resolve
    /// against $HELLMANN_OUTPUT_DIR when it is set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Re-run a stored config: a bare config or the JSON output of a previous run.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<CommandArgs>,
}

#[derive(Debug, Args, Clone)]
pub struct PotentialArgs {
    /// Coulomb strength a.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Screened strength b.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub b: f64,
    /// Screening parameter λ.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Mass.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m: f64,
    /// Reduced Planck constant.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
    /// Unit convention shortcut; sets m and ħ and rescales a and b.
    #[arg(long, value_enum, conflicts_with_all = ["m", "hbar"])]
    pub convention: Option<ConventionName>,
}

impl PotentialArgs {
    fn resolve(&self) -> Result<PotentialParams, Error> {
        match self.convention {
            Some(ConventionName::Table1) => TABLE_ONE.params(self.a, self.b, self.lambda),
            None => PotentialParams::new(self.a, self.b, self.lambda, self.m, self.hbar),
        }
    }
}

#[derive(Debug, Args, Clone)]
pub struct QuantumArgs {
    /// Radial index n (first of the range when --n-max is given).
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Angular momentum ℓ (first of the range when --ell-max is given).
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
    #[arg(long)]
    pub ell_max: Option<u32>,
}

impl QuantumArgs {
    fn ranges(&self) -> (IndexRange, IndexRange) {
        (
            IndexRange {
                min: self.n,
                max: self.n_max.unwrap_or(self.n),
            },
            IndexRange {
                min: self.ell,
                max: self.ell_max.unwrap_or(self.ell),
            },
        )
    }
}

#[derive(Debug, Subcommand, Clone)]
pub enum CommandArgs {
    /// Energy eigenvalues on an (n, ℓ) grid.
    Spectrum {
        #[command(flatten)]
        potential: PotentialArgs,
        /// radial, coulomb, pt1d, nhpt, nonpt1 or nonpt2.
        #[arg(long, default_value = "radial")]
        variant: Variant,
        #[command(flatten)]
        qn: QuantumArgs,
        /// Add Numerov eigenvalues (radial and coulomb variants).
        #[arg(long)]
        with_oracle: bool,
    },
    /// Sampled eigenfunction values.
    Wavefunction {
        #[command(flatten)]
        potential: PotentialArgs,
        /// radial, coulomb, pt1d, nhpt, nonpt1 or nonpt2.
        #[arg(long, default_value = "radial")]
        variant: Variant,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        /// Sample in u ∈ (0, 1) (default) or in r.
        #[arg(long, value_enum, default_value = "u")]
        coordinate: CoordinateArg,
        #[arg(long, allow_negative_numbers = true)]
        min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        max: Option<f64>,
        #[arg(long, default_value_t = 11)]
        points: usize,
        /// Normalize with the given measure: mapped (∫|R|² du) or physical (∫|R|² dr).
        #[arg(long)]
        normalize: Option<Measure>,
    },
    /// Phase shifts δ_ℓ(E) of the radial problem.
    Phase {
        #[command(flatten)]
        potential: PotentialArgs,
        /// radial, coulomb, pt1d, nhpt, nonpt1 or nonpt2.
        #[arg(long, default_value = "radial")]
        variant: Variant,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[arg(long)]
        ell_max: Option<u32>,
        /// Scattering energies (repeat or comma-separate).
        #[arg(
            long = "E",
            required = true,
            value_delimiter = ',',
            allow_negative_numbers = true
        )]
        energies: Vec<f64>,
        /// Add the phase fitted to a Numerov solution of the approximated equation.
        #[arg(long)]
        with_oracle: bool,
    },
    /// Compare the closed form and the Numerov oracles with the embedded table.
    Validate {
        /// Omit the two Numerov columns.
        #[arg(long)]
        skip_oracle: bool,
    },
    /// Exact versus exponential stand-ins for 1/r or 1/r².
    ApproxProfile {
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        r_min: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        r_max: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// pekeris (1/r²) or inverse-x-exp (1/r).
        #[arg(long, default_value = "pekeris")]
        scheme: ApproxScheme,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoordinateArg {
    U,
    R,
}

/// Failure of a CLI run, mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Run(e) => match e.kind() {
                ErrorKind::Domain => EXIT_DOMAIN,
                ErrorKind::Numerical => EXIT_NUMERICAL,
            },
        }
    }

    /// `error kind=<usage|domain|numerical> reason=<message>` on one line.
    pub fn line(&self) -> String {
        let (kind, reason) = match self {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Run(e) => (
                match e.kind() {
                    ErrorKind::Domain => "domain",
                    ErrorKind::Numerical => "numerical",
                },
                e.to_string(),
            ),
        };
        let reason: String = reason.split_whitespace().collect::<Vec<_>>().join(" ");
        format!("error kind={kind} reason={reason}")
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl RunConfig {
    /// Resolves parsed arguments (and an optional stored config) into a run.
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let mut config = match (&cli.config, &cli.command) {
            (Some(_), Some(_)) => {
                return Err(usage("--config cannot be combined with a subcommand"))
            }
            (Some(path), None) => Self::load(path)?,
            (None, Some(cmd)) => Self::from_command(cmd)?,
            (None, None) => return Err(usage("a subcommand or --config is required")),
        };
        if let Some(f) = cli.format {
            config.output = f;
        }
        if let Some(p) = &cli.output {
            config.output_path = Some(p.clone());
        }
        config.validate()?;
        Ok(config)
    }

    /// Reads a bare config or the `meta.config` of a JSON output.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| usage(format!("config {} is not JSON: {e}", path.display())))?;
        let inner = value
            .get("meta")
            .and_then(|m| m.get("config"))
            .cloned()
            .unwrap_or(value);
        serde_json::from_value(inner)
            .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))
    }

    fn from_command(cmd: &CommandArgs) -> Result<Self, CliError> {
        let zero = IndexRange { min: 0, max: 0 };
        let base = |command, params, variant, ranges, options| RunConfig {
            command,
            params,
            variant,
            ranges,
            options,
            output: OutputFormat::Json,
            output_path: None,
        };
        Ok(match cmd {
            CommandArgs::Spectrum {
                potential,
                variant,
                qn,
                with_oracle,
            } => {
                let (n, ell) = qn.ranges();
                base(
                    CommandName::Spectrum,
                    potential.resolve()?,
                    *variant,
                    Ranges {
                        n,
                        ell,
                        energies: vec![],
                        coordinate: None,
                    },
                    Options {
                        with_oracle: *with_oracle,
                        convention: potential.convention,
                        ..Options::default()
                    },
                )
            }
            CommandArgs::Wavefunction {
                potential,
                variant,
                n,
                ell,
                coordinate,
                min,
                max,
                points,
                normalize,
            } => {
                let (kind, lo, hi) = match coordinate {
                    CoordinateArg::U => {
                        (CoordinateKind::U, min.unwrap_or(0.05), max.unwrap_or(0.95))
                    }
                    CoordinateArg::R => {
                        (CoordinateKind::R, min.unwrap_or(0.5), max.unwrap_or(20.0))
                    }
                };
                base(
                    CommandName::Wavefunction,
                    potential.resolve()?,
                    *variant,
                    Ranges {
                        n: IndexRange { min: *n, max: *n },
                        ell: IndexRange {
                            min: *ell,
                            max: *ell,
                        },
                        energies: vec![],
                        coordinate: Some(CoordinateGrid {
                            kind,
                            min: lo,
                            max: hi,
                            points: *points,
                        }),
                    },
                    Options {
                        normalize: *normalize,
                        convention: potential.convention,
                        ..Options::default()
                    },
                )
            }
            CommandArgs::Phase {
                potential,
                variant,
                ell,
                ell_max,
                energies,
                with_oracle,
            } => base(
                CommandName::Phase,
                potential.resolve()?,
                *variant,
                Ranges {
                    n: zero,
                    ell: IndexRange {
                        min: *ell,
                        max: ell_max.unwrap_or(*ell),
                    },
                    energies: energies.clone(),
                    coordinate: None,
                },
                Options {
                    with_oracle: *with_oracle,
                    scheme: with_oracle.then_some(ApproxScheme::PekerisCentrifugal),
                    convention: potential.convention,
                    ..Options::default()
                },
            ),
            CommandArgs::Validate { skip_oracle } => base(
                CommandName::Validate,
                TABLE_ONE.params(1.0, 0.0, 0.0)?,
                Variant::RadialHermitian,
                Ranges {
                    n: zero,
                    ell: zero,
                    energies: vec![],
                    coordinate: None,
                },
                Options {
                    with_oracle: !skip_oracle,
                    convention: Some(ConventionName::Table1),
                    ..Options::default()
                },
            ),
            CommandArgs::ApproxProfile {
                lambda,
                r_min,
                r_max,
                points,
                scheme,
            } => base(
                CommandName::ApproxProfile,
                PotentialParams::natural(1.0, 0.0, *lambda)?,
                Variant::RadialHermitian,
                Ranges {
                    n: zero,
                    ell: zero,
                    energies: vec![],
                    coordinate: Some(CoordinateGrid {
                        kind: CoordinateKind::R,
                        min: *r_min,
                        max: *r_max,
                        points: *points,
                    }),
                },
                Options {
                    scheme: Some(*scheme),
                    ..Options::default()
                },
            ),
        })
    }

    /// Checks that do not depend on the physics: ranges, grids and
    /// command/variant compatibility.
    pub fn validate(&self) -> Result<(), CliError> {
        self.params.validate()?;
        for (r, name) in [(self.ranges.n, "n"), (self.ranges.ell, "ell")] {
            if r.min > r.max {
                return Err(usage(format!(
                    "{name} range is empty: {}..{}",
                    r.min, r.max
                )));
            }
        }
        if let Some(g) = &self.ranges.coordinate {
            if !(g.min.is_finite() && g.max.is_finite() && g.min < g.max) {
                return Err(usage(format!(
                    "coordinate range [{}, {}] is empty",
                    g.min, g.max
                )));
            }
            if g.points < 2 {
                return Err(usage("need at least 2 grid points"));
            }
        }
        match self.command {
            CommandName::Phase => {
                if self.variant != Variant::RadialHermitian {
                    return Err(usage(format!(
                        "phase is only defined for the radial variant, not {}",
                        self.variant
                    )));
                }
                if self.ranges.energies.is_empty() {
                    return Err(usage("phase needs at least one energy (--E)"));
                }
                if self.ranges.energies.iter().any(|e| !e.is_finite()) {
                    return Err(usage("energies must be finite"));
                }
            }
            CommandName::Wavefunction => {
                if self.ranges.coordinate.is_none() {
                    return Err(usage("wavefunction needs a coordinate grid"));
                }
            }
            CommandName::ApproxProfile => {
                if self.ranges.coordinate.is_none() || self.options.scheme.is_none() {
                    return Err(usage("approx-profile needs a radius grid and a scheme"));
                }
            }
            CommandName::Spectrum => {
                if self.options.with_oracle
                    && !matches!(
                        self.variant,
                        Variant::RadialHermitian | Variant::CoulombLimit
                    )
                {
                    return Err(usage(format!(
                        "no Numerov oracle exists for the {} variant",
                        self.variant
                    )));
                }
            }
            CommandName::Validate => {}
        }
        Ok(())
    }
}

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Complex(Complex64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn opt(x: Option<f64>) -> Cell {
        x.map_or(Cell::Empty, Cell::Num)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => sig(*x),
            Cell::Complex(z) => format::complex(*z),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        let num =
            |x: f64| serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(x) => num(*x),
            Cell::Complex(z) => json!({ "re": num(z.re), "im": num(z.im) }),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

/// Column names plus rows, in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> Result<String, Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json(&self, config: &RunConfig) -> Result<String, Error> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "meta": { "version": env!("CARGO_PKG_VERSION"), "config": config },
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

fn spectrum(cfg: &RunConfig) -> Result<Table, Error> {
    let mut columns = vec![
        "variant",
        "n",
        "ell",
        "energy",
        "printed_energy",
        "normalizable",
        "source",
    ];
    if cfg.options.with_oracle {
        columns.extend(["oracle_exact", "oracle_approx"]);
    }
    let grid: Vec<QuantumNumbers> = cfg
        .ranges
        .n
        .values()
        .flat_map(|n| {
            cfg.ranges
                .ell
                .values()
                .map(move |l| QuantumNumbers::new(n, l))
        })
        .collect();
    let solver = SolverConfig::default();
    let rows = grid
        .par_iter()
        .map(|&qn| {
            let e = bound_energy(&cfg.params, cfg.variant, qn)?;
            let printed = printed_energy(&cfg.params, cfg.variant, qn)?;
            let mut row = vec![
                Cell::Text(cfg.variant.label().to_string()),
                Cell::Int(qn.n as i64),
                Cell::Int(qn.ell as i64),
                Cell::Complex(e.energy),
                Cell::Complex(printed),
                e.normalizable.map_or(Cell::Empty, Cell::Bool),
                Cell::Text("analytic".into()),
            ];
            if cfg.options.with_oracle {
                if e.normalizable == Some(false) {
                    row.extend([Cell::Empty, Cell::Empty]);
                } else {
                    let exact =
                        numerov_eigen(&cfg.params, qn, ApproxScheme::ExactCentrifugal, &solver)?;
                    let approx = if cfg.params.lambda > 0.0 {
                        Some(
                            numerov_eigen(
                                &cfg.params,
                                qn,
                                ApproxScheme::PekerisCentrifugal,
                                &solver,
                            )?
                            .energy
                            .re,
                        )
                    } else {
                        None
                    };
                    row.extend([Cell::Num(exact.energy.re), Cell::opt(approx)]);
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table { columns, rows })
}

fn wavefunction_table(cfg: &RunConfig) -> Result<Table, Error> {
    let grid = cfg.ranges.coordinate.expect("validated");
    let qn = QuantumNumbers::new(cfg.ranges.n.min, cfg.ranges.ell.min);
    let measure = cfg.options.normalize.unwrap_or_default();
    let rows = grid
        .values()
        .par_iter()
        .map(|&x| {
            let (r, u, coord) = match grid.kind {
                CoordinateKind::U => (None, x, Coordinate::Mapped(x)),
                CoordinateKind::R => (
                    Some(x),
                    (-cfg.params.lambda * x).exp(),
                    Coordinate::Radial(x),
                ),
            };
            let value = wavefunction(
                &cfg.params,
                cfg.variant,
                qn,
                coord,
                cfg.options.normalize.is_some(),
                measure,
            )?;
            Ok(vec![
                Cell::Text(cfg.variant.label().to_string()),
                Cell::Int(qn.n as i64),
                Cell::Int(qn.ell as i64),
                Cell::opt(r),
                Cell::Num(u),
                Cell::Complex(value),
            ])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table {
        columns: vec!["variant", "n", "ell", "r", "u", "value"],
        rows,
    })
}

fn phase_table(cfg: &RunConfig) -> Result<Table, Error> {
    let mut columns = vec![
        "ell",
        "E",
        "kappa",
        "capital_lambda2",
        "delta",
        "delta_raw",
        "branch",
        "amplitude",
        "outside_derivation_regime",
    ];
    if cfg.options.with_oracle {
        columns.extend(["oracle_delta", "oracle_residual", "deviation"]);
    }
    let grid: Vec<(u32, f64)> = cfg
        .ranges
        .ell
        .values()
        .flat_map(|l| cfg.ranges.energies.iter().map(move |&e| (l, e)))
        .collect();
    let scheme = cfg
        .options
        .scheme
        .unwrap_or(ApproxScheme::PekerisCentrifugal);
    let rows = grid
        .par_iter()
        .map(|&(ell, e)| {
            let st = scatter_state(&cfg.params, e, ell)?;
            let ps = phase_shift(&cfg.params, e, ell)?;
            let amp = asymptotic_amplitude(&cfg.params, e, ell)?;
            let mut row = vec![
                Cell::Int(ell as i64),
                Cell::Num(e),
                Cell::Num(st.kappa.re),
                Cell::Complex(st.capital_lambda2),
                Cell::Num(ps.delta),
                Cell::Num(ps.delta_raw),
                Cell::Int(ps.branch),
                Cell::Num(amp),
                Cell::Bool(ps.outside_derivation_regime),
            ];
            if cfg.options.with_oracle {
                let fit = numeric_phase(&cfg.params, e, ell, scheme, &SolverConfig::default())?;
                row.extend([
                    Cell::Num(fit.delta),
                    Cell::Num(fit.residual),
                    Cell::Num(reduce_mod_pi(ps.delta - fit.delta).0),
                ]);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table { columns, rows })
}

fn validate_report(cfg: &RunConfig) -> Result<Table, Error> {
    let solver = SolverConfig::default();
    let report = validate_table(&TABLE_ONE, cfg.options.with_oracle.then_some(&solver))?;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                Cell::Text(r.id.clone()),
                Cell::Num(r.a),
                Cell::Num(r.b),
                Cell::Num(r.lambda),
                Cell::Int(r.table_n as i64),
                Cell::Int(r.ell as i64),
                Cell::Int(r.n as i64),
                Cell::Num(r.table_value),
                Cell::Num(r.reference_a),
                Cell::Num(r.reference_b),
                Cell::Num(r.analytic),
                Cell::Num(r.printed),
                Cell::opt(r.oracle_exact),
                Cell::opt(r.oracle_approx),
                Cell::Num(r.dev_analytic),
                Cell::Num(r.dev_printed),
                Cell::opt(r.dev_oracle_exact),
                Cell::opt(r.dev_oracle_approx),
            ]
        })
        .collect();
    Ok(Table {
        columns: vec![
            "id",
            "a",
            "b",
            "lambda",
            "table_n",
            "ell",
            "n",
            "table_value",
            "reference_a",
            "reference_b",
            "analytic",
            "printed",
            "oracle_exact",
            "oracle_approx",
            "dev_analytic",
            "dev_printed",
            "dev_oracle_exact",
            "dev_oracle_approx",
        ],
        rows,
    })
}

fn profile_table(cfg: &RunConfig) -> Result<Table, Error> {
    let grid = cfg.ranges.coordinate.expect("validated");
    let scheme = cfg.options.scheme.expect("validated");
    let rows = approx_profile(cfg.params.lambda, grid.min, grid.max, grid.points, scheme)?
        .into_iter()
        .map(|p| {
            vec![
                Cell::Num(p.r),
                Cell::Num(p.exact),
                Cell::Num(p.approx),
                Cell::Num(p.rel_err),
            ]
        })
        .collect();
    Ok(Table {
        columns: vec!["r", "exact", "approx", "rel_err"],
        rows,
    })
}

/// Computes the table for a validated config.
pub fn build_table(cfg: &RunConfig) -> Result<Table, Error> {
    match cfg.command {
        CommandName::Spectrum => spectrum(cfg),
        CommandName::Wavefunction => wavefunction_table(cfg),
        CommandName::Phase => phase_table(cfg),
        CommandName::Validate => validate_report(cfg),
        CommandName::ApproxProfile => profile_table(cfg),
    }
}

/// Renders a table in the config's output format.
pub fn render(cfg: &RunConfig, table: &Table) -> Result<String, Error> {
    match cfg.output {
        OutputFormat::Json => table.to_json(cfg),
        OutputFormat::Csv => table.to_csv(),
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Runs a config and writes its artifact.
pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let table = build_table(cfg)?;
    let text = render(cfg, &table)?;
    match &cfg.output_path {
        Some(p) => {
            let path = resolve_output(p);
            if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(Error::from)?;
            }
            fs::write(&path, text).map_err(Error::from)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(Error::from)?;
        }
    }
    Ok(())
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::from_cli(&cli).and_then(|cfg| run(&cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.line());
            e.exit_code()
        }
    }
}
