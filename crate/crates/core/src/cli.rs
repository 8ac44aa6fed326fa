//! The `hydrogen-dirac` command line.
//!
//! Three subcommands write one table to stdout, either as CSV (leading `#`
//! metadata lines, then a header row) or as a single JSON object
//! `{schema_version, command, meta, rows}`. Floats are printed with 17
//! significant digits in CSV and as shortest round-trip decimals in JSON, so
//! both parse to the same `f64` values.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
//! failure.

use std::ffi::OsString;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::quantum::{convert_energy, HalfInt, PhysicsConfig, QuantumState, CODATA_ALPHA, ELECTRON_REST_ENERGY_EV};
use crate::spectrum::spectrum_table;
use crate::verify::{run_suite, ResidualOptions};
use crate::wavefn::{normalize, ProfileKind, QuadratureSpec, RadialGrid, RadialSolution};
use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "hydrogen-dirac", version, about = "Relativistic hydrogen spectrum and wave functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies for all levels with n <= n_max.
    Spectrum {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate the radial functions of one state.
    Wavefunction(WavefunctionArgs),
    /// Run the residual certification suite.
    Verify {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        /// Threshold for residuals with analytic derivatives.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Threshold with finite-difference derivatives [default: 100 x tolerance].
        #[arg(long)]
        fd_tolerance: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Fine-structure constant.
    #[arg(long, env = "HYDROGEN_DIRAC_ALPHA", default_value_t = CODATA_ALPHA)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: i64,
    /// Magnetic quantum number, e.g. 1/2 or -3/2 [default: j].
    #[arg(long, value_parser = parse_half_int, allow_hyphen_values = true)]
    pub m_j: Option<HalfInt>,
    /// Innermost radius in reduced Compton wavelengths [default: 1e-3/alpha].
    #[arg(long)]
    pub r_min: Option<f64>,
    /// Outermost radius in reduced Compton wavelengths [default: 50 n^2/alpha].
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Which::All)]
    pub which: Which,
    /// Multiply by the normalization constant.
    #[arg(long)]
    pub normalized: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Phi,
    #[value(name = "phi_tilde")]
    PhiTilde,
    Psi,
    All,
}

impl Which {
    fn kinds(self) -> &'static [ProfileKind] {
        match self {
            Self::Phi => &[ProfileKind::Phi],
            Self::PhiTilde => &[ProfileKind::PhiTilde],
            Self::Psi => &[ProfileKind::PsiA, ProfileKind::PsiB],
            Self::All => &[ProfileKind::Phi, ProfileKind::PhiTilde, ProfileKind::PsiA, ProfileKind::PsiB],
        }
    }
}

fn parse_half_int(s: &str) -> Result<HalfInt, String> {
    let bad = || format!("expected an integer or k/2, got {s:?}");
    match s.split_once('/') {
        Some((num, "2")) => num.trim().parse::<i32>().map(HalfInt::from_twice).map_err(|_| bad()),
        Some(_) => Err(bad()),
        None => s
            .trim()
            .parse::<i32>()
            .ok()
            .and_then(|v| v.checked_mul(2))
            .map(HalfInt::from_twice)
            .ok_or_else(bad),
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Self::Int(v) => v.to_string(),
            Self::Float(v) => format_float(*v),
            Self::Text(s) => s.clone(),
            Self::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Int(v) => Value::from(*v),
            Self::Float(v) => Value::from(*v),
            Self::Text(s) => Value::from(s.as_str()),
            Self::Bool(b) => Value::from(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Self::Text(v.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Self::Bool(v)
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Self::Int(i64::from(v))
            }
        }
    )*};
}
int_cell!(i32, u32, i64);

/// 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// One command's output: metadata plus rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub meta: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(command: &str, config: &PhysicsConfig, columns: &[&str]) -> Self {
        Self {
            command: command.to_owned(),
            meta: vec![
                ("alpha".into(), config.alpha().into()),
                ("rest_energy_eV".into(), config.rest_energy_ev().into()),
            ],
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn meta(&mut self, key: &str, value: impl Into<Cell>) {
        self.meta.push((key.to_owned(), value.into()));
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut out = out;
        writeln!(out, "# schema_version: {SCHEMA_VERSION}")?;
        writeln!(out, "# command: {}", self.command)?;
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {}", v.csv())?;
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), v.json()))
                        .collect(),
                )
            })
            .collect();
        let mut top = Map::new();
        top.insert("schema_version".into(), SCHEMA_VERSION.into());
        top.insert("command".into(), self.command.clone().into());
        top.insert("meta".into(), Value::Object(meta));
        top.insert("rows".into(), Value::Array(rows));
        Value::Object(top)
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                writeln!(out)
            }
        }
    }
}

/// A failed command, mapped to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SpecFun(_) | Error::Quadrature { .. } => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn config_for(common: &Common) -> Result<PhysicsConfig, Failure> {
    Ok(PhysicsConfig::new(common.alpha, ELECTRON_REST_ENERGY_EV)?)
}

pub fn spectrum_command(n_max: u32, config: &PhysicsConfig) -> Result<Table, Failure> {
    let mut table = Table::new(
        "spectrum",
        config,
        &["n", "kappa", "l", "j", "label", "n_r", "E_over_mc2", "lambda", "binding_eV"],
    );
    table.meta("n_max", n_max);
    for row in spectrum_table(n_max, config)? {
        table.rows.push(vec![
            row.n.into(),
            row.kappa.into(),
            row.l.into(),
            row.j.to_string().into(),
            row.label.into(),
            row.n_r.into(),
            row.energy.into(),
            row.lambda.into(),
            row.binding_ev.into(),
        ]);
    }
    Ok(table)
}

pub fn wavefunction_command(args: &WavefunctionArgs, config: &PhysicsConfig) -> Result<Table, Failure> {
    let probe = QuantumState::stretched(args.n, args.kappa, config)?;
    let state = match args.m_j {
        Some(m_j) => QuantumState::new(args.n, args.kappa, m_j, config)?,
        None => probe,
    };
    let solution = RadialSolution::for_state(&state, config)?;
    let (lo, hi) = crate::wavefn::default_range(&state, config)?;
    let grid = RadialGrid::log_spaced(args.r_min.unwrap_or(lo), args.r_max.unwrap_or(hi), args.points)?;
    let constant = if args.normalized {
        normalize(&solution, &QuadratureSpec::default_for(&state, config)?)?.constant
    } else {
        1.0
    };

    let kinds = args.which.kinds();
    let mut columns = vec!["r", "r_bohr"];
    columns.extend(kinds.iter().map(|k| k.name()));
    let mut table = Table::new("wavefunction", config, &columns);
    let energy = solution.energy();
    table.meta("n", state.n());
    table.meta("kappa", state.kappa());
    table.meta("m_j", state.m_j().to_string());
    table.meta("label", state.label());
    table.meta("E_over_mc2", energy.value());
    table.meta("lambda", energy.lambda());
    table.meta("binding_eV", convert_energy(energy, config).binding);
    table.meta("normalized", args.normalized);
    table.meta("normalization", constant);
    table.meta("lower_component", format!("-i * psi_b * Y(kappa={})", -state.kappa()));

    let bohr = config.bohr_radius();
    for &r in grid.points() {
        let mut row: Vec<Cell> = vec![r.into(), (r / bohr).into()];
        for &kind in kinds {
            row.push((constant * solution.evaluate(kind, r)?).into());
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// The suite table and whether every check passed.
pub fn verify_command(n_max: u32, opts: &ResidualOptions, config: &PhysicsConfig) -> Result<(Table, bool), Failure> {
    if !(opts.tolerance > 0.0 && opts.fd_tolerance > 0.0) {
        return Err(Error::InvalidArgument("tolerances must be positive".into()).into());
    }
    let rows = run_suite(n_max, config, opts)?;
    let mut table = Table::new(
        "verify",
        config,
        &["check", "equation", "n", "kappa", "label", "oracle", "metric", "tolerance", "passed"],
    );
    table.meta("n_max", n_max);
    table.meta("tolerance", opts.tolerance);
    table.meta("fd_tolerance", opts.fd_tolerance);
    let all = rows.iter().all(|r| r.passed);
    table.meta("checks", rows.len() as i64);
    table.meta("failed", rows.iter().filter(|r| !r.passed).count() as i64);
    for row in rows {
        table.rows.push(vec![
            row.check.into(),
            row.equation.into(),
            row.n.into(),
            row.kappa.into(),
            row.label.into(),
            row.oracle.into(),
            row.metric.into(),
            row.tolerance.into(),
            row.passed.into(),
        ]);
    }
    Ok((table, all))
}

fn execute(cli: Cli) -> Result<(Table, Format, bool), Failure> {
    match cli.command {
        Command::Spectrum { n_max, common } => {
            let config = config_for(&common)?;
            Ok((spectrum_command(n_max, &config)?, common.format, true))
        }
        Command::Wavefunction(args) => {
            let config = config_for(&args.common)?;
            Ok((wavefunction_command(&args, &config)?, args.common.format, true))
        }
        Command::Verify {
            n_max,
            tolerance,
            fd_tolerance,
            common,
        } => {
            let config = config_for(&common)?;
            let opts = ResidualOptions {
                tolerance,
                fd_tolerance: fd_tolerance.unwrap_or(100.0 * tolerance),
                ..ResidualOptions::default()
            };
            let (table, ok) = verify_command(n_max, &opts, &config)?;
            Ok((table, common.format, ok))
        }
    }
}

/// Parses `args`, writes the table to `out`, diagnostics to `err`.
pub fn run<I, T, W, E>(args: I, mut out: W, mut err: E) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_USAGE;
        }
    };
    match execute(cli) {
        Ok((table, format, ok)) => {
            if let Err(e) = table.write(format, &mut out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_NUMERICAL;
            }
            if ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_VERIFY_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let code = run(std::env::args_os(), io::stdout().lock(), io::stderr().lock());
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hydrogen-dirac").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn half_int_parsing() {
        assert_eq!(parse_half_int("1/2"), Ok(HalfInt::from_twice(1)));
        assert_eq!(parse_half_int("-3/2"), Ok(HalfInt::from_twice(-3)));
        assert_eq!(parse_half_int("2"), Ok(HalfInt::from_twice(4)));
        assert!(parse_half_int("1/3").is_err());
        assert!(parse_half_int("x").is_err());
    }

    #[test]
    fn spectrum_csv_header() {
        let (code, out, _) = run_str(&["spectrum", "--n-max", "1"]);
        assert_eq!(code, 0);
        let data: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "n,kappa,l,j,label,n_r,E_over_mc2,lambda,binding_eV");
        assert_eq!(data.len(), 2);
        assert!(data[1].starts_with("1,-1,0,1/2,1s1/2,0,9.9997337396826"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["spectrum", "--n-max", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["spectrum", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["spectrum", "--alpha", "1.5"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["wavefunction", "--n", "1", "--kappa", "1"]).0, EXIT_USAGE);
        let (code, out, _) = run_str(&["wavefunction", "--n", "1", "--kappa", "-1", "--points", "1"]);
        assert_eq!((code, out.as_str()), (EXIT_USAGE, ""));
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("wavefunction"));
    }

    #[test]
    fn failures_map_to_codes() {
        let q: Failure = Error::Quadrature {
            estimate: 1.0,
            error_bound: 1.0,
            limit: 1e-9,
        }
        .into();
        assert_eq!(q.code, EXIT_NUMERICAL);
        let u: Failure = Error::InvalidArgument("x".into()).into();
        assert_eq!(u.code, EXIT_USAGE);
    }
}
