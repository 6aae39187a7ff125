//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for malformed input (schema), 3 for guard
//! violations (overflow, radius range, λ-cutoff rule), 1 for I/O failures.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::boundary::{CauchyData, SobolevOrder};
use crate::error::{Error, Result};
use crate::hadamard::{
    dropped_modes_json, instability_csv, instability_table, solve_cauchy_filtered, FilterSpec, TableSolver,
};
use crate::kernels::{
    partial_reconstruct, reconstruct_analytic, solve_cauchy_eq3, truncation_bound, AnalyticBoundary, Eq3Mode,
    LaurentPoly, QuadratureSpec,
};
use crate::oracle::{solve_cauchy_oracle, Annulus, Field, PolarGrid};

#[derive(Debug, Parser)]
#[command(name = "annulus-cauchy", version, about = "Cauchy problem for the Laplace equation in an annulus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CommonArgs {
    /// Inner radius ρ of the annulus ρ < |z| < 1.
    #[arg(long, global = true, default_value_t = 0.25)]
    pub inner_radius: f64,
    /// Radii as `a:b:n` (n evenly spaced values from a to b inclusive).
    #[arg(long, global = true, default_value = "0.3:0.9:5")]
    pub grid_r: String,
    /// Number of equispaced angles.
    #[arg(long, global = true, default_value_t = 16)]
    pub grid_phi: usize,
    /// Gauss–Laguerre order.
    #[arg(long, global = true, default_value_t = 16)]
    pub laguerre: usize,
    /// Periodic trapezoid nodes.
    #[arg(long, global = true, default_value_t = 256)]
    pub angular: usize,
    /// λ-integral cutoff; defaults to (N + 40)/r per point.
    #[arg(long, global = true)]
    pub lambda_cutoff: Option<f64>,
    /// Nodes of the composite rule on finite intervals.
    #[arg(long, global = true)]
    pub lambda_nodes: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Modal)]
    pub mode: ModeArg,
    /// Spectral cutoff: largest admissible per-mode gain (`inf` allowed).
    #[arg(long, global = true)]
    pub gain_cap: Option<f64>,
    /// Probe radius for the filter and the instability table.
    #[arg(long, global = true, default_value_t = 0.5)]
    pub probe_r: f64,
    /// Sobolev order of the data norm.
    #[arg(long, global = true, default_value_t = 0.0)]
    pub sobolev: f64,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Modal,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableSolverArg {
    Oracle,
    #[value(name = "eq3-modal")]
    Eq3Modal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the integral representation on the grid (Field CSV).
    Solve {
        /// Cauchy data JSON `{"g": .., "h": ..}`.
        #[arg(long)]
        input: PathBuf,
    },
    /// Evaluate the separation-of-variables oracle (Field CSV); with
    /// `--gain-cap`, apply the spectral cutoff.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Where to write the dropped-mode JSON list (stderr when absent).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Max/mean absolute discrepancy (JSON) between the integral
    /// representation and the oracle, or between two Field CSV files.
    Compare {
        #[arg(long, required_unless_present = "field_a")]
        input: Option<PathBuf>,
        #[arg(long, requires = "field_b")]
        field_a: Option<PathBuf>,
        #[arg(long, requires = "field_a")]
        field_b: Option<PathBuf>,
    },
    /// Reconstruct a Laurent polynomial from its values on |ζ| = 1 and
    /// |ζ| = ρ and report errors at the grid points (JSON).
    Reconstruct {
        /// Laurent JSON `{"powers": [..], "re": [..], "im": [..]}`.
        #[arg(long)]
        input: PathBuf,
        /// Truncate the ε-integrals at N and report the error bound.
        #[arg(long)]
        truncation: Option<f64>,
    },
    /// Instability table for Hadamard's data (CSV).
    HadamardDemo {
        /// Comma list (`5,9,13`) or range `a:b:step`.
        #[arg(long, default_value = "5:45:4")]
        n_list: String,
        #[arg(long, value_enum, default_value_t = TableSolverArg::Oracle)]
        solver: TableSolverArg,
    },
}

/// Validated settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub annulus: Annulus,
    pub grid: PolarGrid,
    pub quadrature: QuadratureSpec,
    pub mode: Eq3Mode,
    pub filter: Option<FilterSpec>,
    pub probe_r: f64,
    pub sobolev: SobolevOrder,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self> {
        let annulus = Annulus::new(args.inner_radius)?;
        let (a, b, n) = parse_range_f64(&args.grid_r)?;
        if args.grid_phi == 0 {
            return Err(Error::schema("grid_phi", "angle count must be positive"));
        }
        let grid = PolarGrid::uniform(a, b, n, args.grid_phi)?;
        let quadrature = QuadratureSpec::new(args.laguerre, args.angular, args.lambda_cutoff, args.lambda_nodes)?;
        let filter = args.gain_cap.map(|cap| FilterSpec::new(args.probe_r, cap)).transpose()?;
        Ok(RunConfig {
            annulus,
            grid,
            quadrature,
            mode: match args.mode {
                ModeArg::Modal => Eq3Mode::Modal,
                ModeArg::Quadrature => Eq3Mode::Quadrature,
            },
            filter,
            probe_r: args.probe_r,
            sobolev: SobolevOrder::new(args.sobolev)?,
            out: args.out.clone(),
        })
    }
}

fn parse_range_f64(spec: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::schema("grid_r", format!("expected `a:b:n`, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a = parts[0].trim().parse::<f64>().map_err(|_| bad())?;
    let b = parts[1].trim().parse::<f64>().map_err(|_| bad())?;
    let n = parts[2].trim().parse::<usize>().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok((a, b, n))
}

/// `5,9,13` or `a:b:step`.
pub fn parse_n_list(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::schema("n_list", format!("expected `n1,n2,..` or `a:b:step`, got `{spec}`"));
    let list: Vec<usize> = if spec.contains(':') {
        let parts: Vec<usize> =
            spec.split(':').map(|p| p.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
        match parts.as_slice() {
            &[a, b, step] if step > 0 && a <= b => (a..=b).step_by(step).collect(),
            _ => return Err(bad()),
        }
    } else {
        spec.split(',').map(|p| p.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?
    };
    if list.is_empty() || list.contains(&0) {
        return Err(bad());
    }
    Ok(list)
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Writes `contents` to `path` through a temp file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let io = |e: std::io::Error| Error::io(path.display().to_string(), e);
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).map_err(|e| Error::io("<stdout>", e))
        }
    }
}

#[derive(Serialize)]
struct Discrepancy<'a> {
    solver: &'a str,
    reference: &'a str,
    points: usize,
    max_abs: f64,
    mean_abs: f64,
}

#[derive(Serialize)]
struct ProbeReport {
    r: f64,
    phi: f64,
    re: f64,
    im: f64,
    exact_re: f64,
    exact_im: f64,
    error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<f64>,
}

#[derive(Serialize)]
struct ReconstructReport {
    inner_radius: f64,
    truncation: Option<f64>,
    max_modulus: f64,
    max_error: f64,
    points: Vec<ProbeReport>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Executes one command.
pub fn run(command: &Command, config: &RunConfig) -> Result<()> {
    match command {
        Command::Solve { input } => {
            let data = CauchyData::from_json(&read_text(input)?)?;
            let field = solve_cauchy_eq3(&data, &config.annulus, &config.grid, &config.quadrature, config.mode)?;
            emit(config.out.as_deref(), &field.to_csv())
        }
        Command::Oracle { input, report } => {
            let data = CauchyData::from_json(&read_text(input)?)?;
            match &config.filter {
                None => {
                    let field = solve_cauchy_oracle(&data, &config.annulus, &config.grid)?;
                    emit(config.out.as_deref(), &field.to_csv())
                }
                Some(filter) => {
                    let (field, dropped) = solve_cauchy_filtered(&data, &config.annulus, &config.grid, filter)?;
                    let json = dropped_modes_json(&dropped) + "\n";
                    match report {
                        Some(path) => write_atomic(path, &json)?,
                        None => eprint!("{json}"),
                    }
                    emit(config.out.as_deref(), &field.to_csv())
                }
            }
        }
        Command::Compare { input, field_a, field_b } => {
            let (a, b) = match (field_a, field_b, input) {
                (Some(pa), Some(pb), _) => (Field::read_csv(pa)?, Field::read_csv(pb)?),
                (_, _, Some(input)) => {
                    let data = CauchyData::from_json(&read_text(input)?)?;
                    let solved =
                        solve_cauchy_eq3(&data, &config.annulus, &config.grid, &config.quadrature, config.mode)?;
                    (solved, solve_cauchy_oracle(&data, &config.annulus, &config.grid)?)
                }
                _ => return Err(Error::schema("input", "need --input or both --field-a and --field-b")),
            };
            let (max_abs, mean_abs) = a.discrepancy(&b)?;
            let report = Discrepancy {
                solver: &a.solver_tag,
                reference: &b.solver_tag,
                points: a.values.len(),
                max_abs,
                mean_abs,
            };
            emit(config.out.as_deref(), &to_json(&report))
        }
        Command::Reconstruct { input, truncation } => {
            let poly = LaurentPoly::from_json(&read_text(input)?)?;
            let rho = config.annulus.inner_radius();
            let boundary = AnalyticBoundary::sample(config.annulus, 1.0, rho, config.quadrature.angular_nodes, |z| {
                poly.evaluate(z)
            })?;
            let max_modulus = boundary.max_modulus();
            let points = config
                .grid
                .points()
                .map(|p| {
                    let z = Complex64::from_polar(p.radius, p.angle);
                    let (value, bound) = match truncation {
                        None => (reconstruct_analytic(&boundary, z, &config.quadrature)?, None),
                        Some(n) => (
                            partial_reconstruct(&boundary, z, *n, &config.quadrature)?,
                            Some(truncation_bound(max_modulus, p.radius, rho, *n)?),
                        ),
                    };
                    let exact = poly.evaluate(z);
                    Ok(ProbeReport {
                        r: p.radius,
                        phi: p.angle,
                        re: value.re,
                        im: value.im,
                        exact_re: exact.re,
                        exact_im: exact.im,
                        error: (value - exact).norm(),
                        bound,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let max_error = points.iter().fold(0.0f64, |m, p| m.max(p.error));
            let report = ReconstructReport { inner_radius: rho, truncation: *truncation, max_modulus, max_error, points };
            emit(config.out.as_deref(), &to_json(&report))
        }
        Command::HadamardDemo { n_list, solver } => {
            let ns = parse_n_list(n_list)?;
            let solver = match solver {
                TableSolverArg::Oracle => TableSolver::Oracle,
                TableSolverArg::Eq3Modal => TableSolver::Eq3Modal,
            };
            let table = instability_table(&ns, config.sobolev, config.probe_r, &config.annulus, solver)?;
            emit(config.out.as_deref(), &instability_csv(&table))
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Schema { .. } => 2,
        Error::Guard { .. } => 3,
        Error::Io { .. } => 1,
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::from_args(&cli.common).and_then(|config| run(&cli.command, &config));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
