//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 no such bound state,
//! 3 numerical oracle failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::expectation::expectation_report;
use crate::hulthen::{self, bound_epsilon, m_index, Eigenstate, GridSpec, PotentialParams, QuantumNumbers};
use crate::oracle::{solve_exact, ShootingConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_STATE: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hulthen", version, about = "Bound states of the D-dimensional Hulthén potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form energy levels for one angular momentum
    Spectrum(CommonArgs),
    /// Sampled normalized eigenfunction U(r) and R(r)
    Wavefunction(WavefunctionArgs),
    /// Hellmann-Feynman expectation values with quadrature cross-checks
    Expectation(CommonArgs),
    /// Closed-form energies against the exact-equation shooting solver
    Validate(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Potential strength
    #[arg(long = "Z", env = "HULTHEN_Z")]
    z: f64,
    /// Screening parameter
    #[arg(long, env = "HULTHEN_ALPHA")]
    alpha: f64,
    #[arg(long, env = "HULTHEN_MU", default_value_t = 1.0)]
    mu: f64,
    #[arg(long, env = "HULTHEN_HBAR", default_value_t = 1.0)]
    hbar: f64,
    /// Spatial dimension
    #[arg(long, env = "HULTHEN_DIM", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    dim: u32,
    /// Angular momentum
    #[arg(long, env = "HULTHEN_L", default_value_t = 0)]
    l: u32,
    /// Radial index (0 is the ground state)
    #[arg(long, env = "HULTHEN_N")]
    n: Option<u32>,
    /// Largest radial index to enumerate
    #[arg(long, env = "HULTHEN_N_MAX", default_value_t = hulthen::DEFAULT_N_MAX)]
    n_max: u32,
    #[arg(long, env = "HULTHEN_FORMAT", value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long, env = "HULTHEN_OUT")]
    out: Option<PathBuf>,
    /// Energy tolerance of the shooting solver
    #[arg(long, env = "HULTHEN_ORACLE_TOLERANCE", default_value_t = crate::oracle::DEFAULT_TOLERANCE)]
    oracle_tolerance: f64,
}

#[derive(Debug, Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of grid points
    #[arg(long, env = "HULTHEN_POINTS", default_value_t = 4001)]
    points: usize,
    /// Outer grid radius; defaults to where the tail of |U|^2 is negligible
    #[arg(long, env = "HULTHEN_R_MAX")]
    r_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Validated run settings shared by all subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: PotentialParams,
    pub l: u32,
    pub n: Option<u32>,
    pub n_max: u32,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub oracle_tolerance: f64,
}

impl TryFrom<&CommonArgs> for RunConfig {
    type Error = CliError;

    fn try_from(a: &CommonArgs) -> Result<Self, CliError> {
        let params = PotentialParams::new(a.z, a.alpha, a.mu, a.hbar, a.dim).map_err(|e| CliError::Usage(e.to_string()))?;
        if !(a.oracle_tolerance > 0.0 && a.oracle_tolerance.is_finite()) {
            return Err(CliError::Usage(format!(
                "--oracle-tolerance must be positive, got {}",
                a.oracle_tolerance
            )));
        }
        Ok(Self {
            params,
            l: a.l,
            n: a.n,
            n_max: a.n_max,
            output_format: a.format,
            output_path: a.out.clone(),
            oracle_tolerance: a.oracle_tolerance,
        })
    }
}

impl RunConfig {
    fn qn(&self) -> QuantumNumbers {
        QuantumNumbers::new(self.n.unwrap_or(0), self.l)
    }

    fn meta(&self, command: &str) -> Vec<(&'static str, Value)> {
        let p = &self.params;
        vec![
            ("command", json!(command)),
            ("units", json!(format!("hbar={} mu={}", p.hbar, p.mu))),
            ("Z", json!(p.z)),
            ("alpha", json!(p.alpha)),
            ("mu", json!(p.mu)),
            ("hbar", json!(p.hbar)),
            ("D", json!(p.dim)),
            ("l", json!(self.l)),
            ("delta", json!(p.delta())),
        ]
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    NoState(String),
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::NoState(_) => EXIT_NO_STATE,
            CliError::Oracle(_) => EXIT_ORACLE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::NoState(m) | CliError::Oracle(m) => m,
        }
    }
}

fn no_state(params: &PotentialParams, qn: QuantumNumbers) -> CliError {
    let m = m_index(qn, params.dim);
    CliError::NoState(format!(
        "no bound state for n={}, l={}, D={}: needs delta > m^2 with m > 0 (delta={}, m={})",
        qn.n,
        qn.l,
        params.dim,
        params.delta(),
        m
    ))
}

/// A cell of an output table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Missing,
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) if v.is_finite() => format!("{v:.15e}"),
            Cell::Float(_) | Cell::Missing => String::new(),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Missing => Value::Null,
        }
    }
}

/// Output of a subcommand: header metadata, column names and rows.
/// `single` marks a one-record result, emitted in JSON as an object.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub single: bool,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect();
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| ((*c).to_owned(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = if self.single && records.len() == 1 {
            json!({ "meta": meta, "record": records[0] })
        } else {
            json!({ "meta": meta, "rows": records })
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON values are always serializable");
        s.push('\n');
        s
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Rows `(n, l, D, epsilon, energy, exists)` up to the last bound state.
pub fn cmd_spectrum(cfg: &RunConfig) -> (Table, Result<(), CliError>) {
    let p = &cfg.params;
    let states: Vec<_> = (0..=cfg.n_max)
        .map(|n| hulthen::energy(p, QuantumNumbers::new(n, cfg.l)))
        .collect();
    let last = states.iter().rposition(|s| s.exists());
    let mut meta = cfg.meta("spectrum");
    meta.push(("n_max", json!(cfg.n_max)));
    let mut table = Table {
        meta,
        columns: vec!["n", "l", "D", "epsilon", "energy", "exists"],
        rows: Vec::new(),
        single: false,
    };
    let Some(last) = last else {
        let msg = format!(
            "no bound states for l={} in D={} with n <= {}: delta={} must exceed (n+l+(D-1)/2)^2",
            cfg.l,
            p.dim,
            cfg.n_max,
            p.delta()
        );
        table.meta.push(("note", json!(msg.clone())));
        return (table, Err(CliError::NoState(msg)));
    };
    table.rows = states[..=last]
        .iter()
        .map(|s| {
            vec![
                s.qn.n.into(),
                s.qn.l.into(),
                p.dim.into(),
                if s.epsilon.is_finite() { s.epsilon.into() } else { Cell::Missing },
                s.energy.into(),
                s.exists().into(),
            ]
        })
        .collect();
    (table, Ok(()))
}

/// Rows `(r, U, R)` of the normalized state on a uniform grid.
pub fn cmd_wavefunction(cfg: &RunConfig, points: usize, r_max: Option<f64>) -> Result<Table, CliError> {
    let qn = cfg.qn();
    let p = &cfg.params;
    if bound_epsilon(p, qn).is_none() {
        return Err(no_state(p, qn));
    }
    let state = Eigenstate::new(p, qn).map_err(|e| CliError::Oracle(e.to_string()))?;
    if points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let r_end = r_max.unwrap_or_else(|| state.tail_radius(crate::expectation::QUAD_TAIL));
    let grid = GridSpec::new(r_end / (points - 1) as f64, r_end, points).map_err(|e| CliError::Usage(e.to_string()))?;
    let samples = hulthen::wavefunction_samples(p, qn, &grid).map_err(|e| CliError::Oracle(e.to_string()))?;
    let mut meta = cfg.meta("wavefunction");
    meta.extend([
        ("n", json!(qn.n)),
        ("epsilon", json!(samples.epsilon)),
        ("energy", json!(state.energy)),
        ("C_n", json!(samples.norm_const)),
        ("points", json!(points)),
        ("r_max", json!(r_end)),
    ]);
    let rows = samples
        .r_values
        .iter()
        .zip(&samples.u_values)
        .zip(&samples.big_r_values)
        .map(|((&r, &u), &big_r)| vec![r.into(), u.into(), big_r.into()])
        .collect();
    Ok(Table {
        meta,
        columns: vec!["r", "U", "R"],
        rows,
        single: false,
    })
}

/// One record of closed-form and quadrature expectation values. The
/// optional warning explains a missing `<r^-2>` value.
pub fn cmd_expectation(cfg: &RunConfig) -> Result<(Table, Option<String>), CliError> {
    let qn = cfg.qn();
    let p = &cfg.params;
    let rep = expectation_report(p, qn).map_err(|e| match e {
        Error::NoBoundState { .. } => no_state(p, qn),
        other => CliError::Oracle(other.to_string()),
    })?;
    let warning = rep.inv_r2_hft.is_none().then(|| {
        format!(
            "warning: <r^-2> is not determined by dE/dl when 2l+D-2 <= 0 (l={}, D={}); inv_r2_hft left empty",
            qn.l, p.dim
        )
    });
    let mut meta = cfg.meta("expectation");
    meta.push(("n", json!(qn.n)));
    let row = vec![
        qn.n.into(),
        qn.l.into(),
        p.dim.into(),
        rep.energy.into(),
        rep.inv_r2_hft.into(),
        rep.v_hft.into(),
        rep.t_value.into(),
        rep.inv_r2_quad_approx.into(),
        rep.inv_r2_quad_exact.into(),
        rep.v_quad.into(),
    ];
    Ok((
        Table {
            meta,
            columns: vec![
                "n",
                "l",
                "D",
                "energy",
                "inv_r2_hft",
                "v_hft",
                "t_value",
                "inv_r2_quad_approx",
                "inv_r2_quad_exact",
                "v_quad",
            ],
            rows: vec![row],
            single: true,
        },
        warning,
    ))
}

/// Closed form against the shooting solver, for `--n` or every bound state.
pub fn cmd_validate(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.params;
    let indices: Vec<u32> = match cfg.n {
        Some(n) => vec![n],
        None => (0..=cfg.n_max)
            .filter(|&n| bound_epsilon(p, QuantumNumbers::new(n, cfg.l)).is_some())
            .collect(),
    };
    if indices.is_empty() {
        return Err(CliError::NoState(format!(
            "no bound states for l={} in D={} with n <= {}",
            cfg.l, p.dim, cfg.n_max
        )));
    }
    let mut rows = Vec::with_capacity(indices.len());
    for n in indices {
        let qn = QuantumNumbers::new(n, cfg.l);
        let Some(closed) = hulthen::energy(p, qn).energy else {
            return Err(no_state(p, qn));
        };
        let oracle_err = |e: Error| CliError::Oracle(format!("shooting solver failed for n={n}, l={}: {e}", cfg.l));
        let shoot = ShootingConfig::for_state(p, qn).map_err(oracle_err)?.with_tolerance(cfg.oracle_tolerance);
        let res = solve_exact(p, cfg.l, hulthen::expected_nodes(qn, p.dim), &shoot).map_err(oracle_err)?;
        rows.push(vec![
            n.into(),
            cfg.l.into(),
            p.dim.into(),
            closed.into(),
            res.energy.into(),
            ((closed - res.energy).abs() / res.energy.abs()).into(),
            res.node_count.into(),
            res.converged.into(),
        ]);
    }
    let mut meta = cfg.meta("validate");
    meta.push(("oracle_tolerance", json!(cfg.oracle_tolerance)));
    Ok(Table {
        meta,
        columns: vec!["n", "l", "D", "e_closed", "e_oracle", "rel_error", "node_count", "converged"],
        single: cfg.n.is_some(),
        rows,
    })
}

fn emit(table: &Table, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = table.render(cfg.output_format);
    let io = |e: std::io::Error| CliError::Usage(format!("cannot write output: {e}"));
    match &cfg.output_path {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => stdout.write_all(text.as_bytes()).map_err(io),
    }
}

fn dispatch(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Spectrum(a) => {
            let cfg = RunConfig::try_from(a)?;
            let (table, status) = cmd_spectrum(&cfg);
            emit(&table, &cfg, stdout)?;
            status
        }
        Command::Wavefunction(w) => {
            let cfg = RunConfig::try_from(&w.common)?;
            let table = cmd_wavefunction(&cfg, w.points, w.r_max)?;
            emit(&table, &cfg, stdout)
        }
        Command::Expectation(a) => {
            let cfg = RunConfig::try_from(a)?;
            let (table, warning) = cmd_expectation(&cfg)?;
            if let Some(w) = warning {
                let _ = writeln!(stderr, "{w}");
            }
            emit(&table, &cfg, stdout)
        }
        Command::Validate(a) => {
            let cfg = RunConfig::try_from(a)?;
            let table = cmd_validate(&cfg)?;
            emit(&table, &cfg, stdout)
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(&cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "hulthen: {}", e.message());
            e.exit_code()
        }
    }
}
