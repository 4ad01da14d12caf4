//! Command-line interface of the `varcal` binary.
//!
//! Subcommands: `el` (derive the Euler-Lagrange equation), `extremal`
//! (solve the boundary value problem by shooting), `brach solve` and
//! `brach compare`. Reports go to stdout as text or JSON (`--format`),
//! CSV/SVG artifacts to the paths given by `--csv`/`--svg`. Exit codes:
//! 0 success, 2 parse error, 3 solver failure, 4 infeasible input,
//! 1 I/O failure.
//!
//! Output is deterministic: the same invocation produces byte-identical
//! reports and artifacts.

pub mod svg;

use crate::brach::{self, BrachError, CurveSamples};
use crate::expr::{parse, ParseError};
use crate::numerics::{NumericsError, QuadratureSpec};
use crate::varcalc::{self, euler_lagrange, FirstIntegralKind, Lagrangian, VarcalcError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

const SHOOT_TOL: f64 = 1e-8;
const CYCLOID_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "varcal",
    about = "Calculus of variations: Euler-Lagrange equations, extremals, and the brachistochrone",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive the Euler-Lagrange equation and first integrals of a Lagrangian.
    El(ElArgs),
    /// Solve the boundary value problem for an extremal by RK4 shooting.
    Extremal(ExtremalArgs),
    /// Brachistochrone commands.
    #[command(subcommand)]
    Brach(BrachCommand),
}

#[derive(Debug, Subcommand)]
pub enum BrachCommand {
    /// Solve the cycloid constants and minimal descent time.
    Solve(BrachSolveArgs),
    /// Compare descent times of the cycloid against explicit curves y(x).
    Compare(BrachCompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ElArgs {
    /// Lagrangian L(x, y, yp), e.g. "12*x*y - yp^2"
    #[arg(long, allow_hyphen_values = true)]
    pub lagrangian: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    /// Lagrangian L(x, y, yp)
    #[arg(long, allow_hyphen_values = true)]
    pub lagrangian: String,
    /// Left boundary x = a
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Boundary value y(a)
    #[arg(long, allow_negative_numbers = true)]
    pub ya: f64,
    /// Right boundary x = b
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// Boundary value y(b)
    #[arg(long, allow_negative_numbers = true)]
    pub yb: f64,
    /// Lower end of the initial-slope bracket
    #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
    pub slope_lo: f64,
    /// Upper end of the initial-slope bracket
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub slope_hi: f64,
    /// RK4 steps
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Output samples written to the CSV
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Write the trajectory as CSV (header x,y)
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct BrachSolveArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub y0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub y1: f64,
    /// Gravitational acceleration
    #[arg(long, default_value_t = 9.8)]
    pub g: f64,
    /// Cycloid samples in the CSV/SVG
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Write cycloid samples as CSV (header x,y)
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the cycloid as SVG
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct BrachCompareArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub y0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub y1: f64,
    /// Gravitational acceleration
    #[arg(long, default_value_t = 9.8)]
    pub g: f64,
    /// Explicit curve y(x) through the same endpoints; repeatable
    #[arg(long = "curve", allow_hyphen_values = true)]
    pub curves: Vec<String>,
    /// Samples per curve in the CSV/SVG
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Write all sampled curves as combined CSV (header label,x,y)
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the overlay plot as SVG
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Solver(String),
    #[error("writing {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Infeasible(_) => 4,
            CliError::Io { .. } => 1,
        }
    }
}

impl From<BrachError> for CliError {
    fn from(e: BrachError) -> CliError {
        match e {
            BrachError::NotRightward { .. } | BrachError::Ascending { .. } => {
                CliError::Infeasible(e.to_string())
            }
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<VarcalcError> for CliError {
    fn from(e: VarcalcError) -> CliError {
        match e {
            VarcalcError::SecondOrderLagrangian | VarcalcError::Degenerate => {
                CliError::Infeasible(e.to_string())
            }
            VarcalcError::EvalAt { .. } => CliError::Solver(e.to_string()),
        }
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> CliError {
        CliError::Solver(e.to_string())
    }
}

/// Render a number with 10 significant digits for text reports. Values in
/// ordinary magnitude print as plain decimals, extremes in scientific
/// notation.
pub fn sig10(v: f64) -> String {
    if v == 0.0 {
        return "0.000000000".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..=15).contains(&exp) {
        return format!("{v:.9e}");
    }
    let decimals = (9 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Two-column CSV, one point per line, shortest round-trip decimals.
fn xy_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in points {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

/// Combined CSV for `brach compare`: label,x,y with rows grouped per curve.
fn labeled_csv(curves: &[CurveSamples]) -> String {
    let mut out = String::from("label,x,y\n");
    for c in curves {
        for (x, y) in &c.points {
            let _ = writeln!(out, "{},{x},{y}", c.label);
        }
    }
    out
}

// ---------------------------------------------------------------- el ----

#[derive(Debug, Serialize)]
struct FirstIntegralReport {
    kind: &'static str,
    phi: String,
}

#[derive(Debug, Serialize)]
struct ElReport {
    lagrangian: String,
    residual: String,
    degenerate: bool,
    accel: Option<String>,
    first_integrals: Vec<FirstIntegralReport>,
}

pub fn cmd_el(args: &ElArgs) -> Result<String, CliError> {
    let expr = parse(&args.lagrangian)?;
    let lagrangian = Lagrangian::new(expr)?;
    let result = euler_lagrange(&lagrangian);
    let report = ElReport {
        lagrangian: lagrangian.expr().to_string(),
        residual: result.residual.to_string(),
        degenerate: result.accel.is_none(),
        accel: result.accel.as_ref().map(|a| a.to_string()),
        first_integrals: result
            .first_integrals
            .iter()
            .map(|fi| FirstIntegralReport {
                kind: fi.kind.name(),
                phi: fi.phi.to_string(),
            })
            .collect(),
    };
    if args.format == OutputFormat::Json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "lagrangian: {}", report.lagrangian);
    let _ = writeln!(out, "residual: {} = 0", report.residual);
    match &report.accel {
        Some(a) => {
            let _ = writeln!(out, "acceleration form: ypp = {a}");
        }
        None => {
            let _ = writeln!(
                out,
                "acceleration form: none (degenerate: residual has no ypp term)"
            );
        }
    }
    let momentum = report
        .first_integrals
        .iter()
        .find(|fi| fi.kind == FirstIntegralKind::Momentum.name());
    match momentum {
        Some(fi) => {
            let _ = writeln!(out, "momentum integral: {}", fi.phi);
        }
        None => {
            let _ = writeln!(out, "momentum integral: none (L depends on y)");
        }
    }
    let energy = report
        .first_integrals
        .iter()
        .find(|fi| fi.kind == FirstIntegralKind::Energy.name());
    match energy {
        Some(fi) => {
            let _ = writeln!(out, "energy integral: {}", fi.phi);
        }
        None => {
            let _ = writeln!(out, "energy integral: none (L depends on x)");
        }
    }
    Ok(out)
}

// ---------------------------------------------------------- extremal ----

#[derive(Debug, Serialize)]
struct ExtremalReport {
    lagrangian: String,
    accel: String,
    a: f64,
    ya: f64,
    b: f64,
    yb: f64,
    slope: f64,
    endpoint_miss: f64,
    fd_residual_max: f64,
    steps: usize,
    csv: Option<String>,
}

pub fn cmd_extremal(args: &ExtremalArgs) -> Result<String, CliError> {
    if args.steps < 1 {
        return Err(CliError::Infeasible("steps must be at least 1".into()));
    }
    if args.b == args.a {
        return Err(CliError::Infeasible(
            "boundaries a and b must differ".into(),
        ));
    }
    if args.slope_lo >= args.slope_hi {
        return Err(CliError::Infeasible(
            "slope bracket must satisfy slope_lo < slope_hi".into(),
        ));
    }
    let expr = parse(&args.lagrangian)?;
    let lagrangian = Lagrangian::new(expr)?;
    let result = euler_lagrange(&lagrangian);
    let accel = varcalc::accel_form(&result)?;
    let f = |x: f64, y: f64, yp: f64| -> Result<f64, String> {
        accel
            .evaluate(
                &crate::expr::Bindings::new()
                    .with("x", x)
                    .with("y", y)
                    .with("yp", yp),
            )
            .map_err(|e| e.to_string())
    };
    let (slope, traj) = crate::numerics::shoot(
        f,
        args.a,
        args.ya,
        args.b,
        args.yb,
        args.slope_lo,
        args.slope_hi,
        SHOOT_TOL,
        args.steps,
    )?;
    let endpoint_miss = (traj.end().1 - args.yb).abs();
    let fd_residual_max = fd_residual_check(&result.residual, &traj)?;

    let csv_path = args.csv.as_ref().map(|p| p.display().to_string());
    if let Some(path) = &args.csv {
        let points = downsample(&traj.samples, args.samples);
        write_file(path, &xy_csv(&points))?;
    }
    let report = ExtremalReport {
        lagrangian: lagrangian.expr().to_string(),
        accel: accel.to_string(),
        a: args.a,
        ya: args.ya,
        b: args.b,
        yb: args.yb,
        slope,
        endpoint_miss,
        fd_residual_max,
        steps: args.steps,
        csv: csv_path,
    };
    if args.format == OutputFormat::Json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "lagrangian: {}", report.lagrangian);
    let _ = writeln!(out, "acceleration form: ypp = {}", report.accel);
    let _ = writeln!(
        out,
        "boundary: y({}) = {}, y({}) = {}",
        report.a, report.ya, report.b, report.yb
    );
    let _ = writeln!(out, "slope found: {}", sig10(report.slope));
    let _ = writeln!(out, "endpoint miss: {}", sig10(report.endpoint_miss));
    let _ = writeln!(
        out,
        "max |EL residual| along trajectory (finite-difference ypp): {}",
        sig10(report.fd_residual_max)
    );
    if let Some(path) = &report.csv {
        let _ = writeln!(out, "csv: {path}");
    }
    Ok(out)
}

/// Independent consistency check of the numeric extremal: evaluate the
/// symbolic EL residual at the trajectory samples with ypp taken from
/// finite differences of the yp samples (central in the interior,
/// three-point one-sided at the ends). The result is O(step^2) for a
/// true extremal.
fn fd_residual_check(
    residual: &crate::expr::Expr,
    traj: &crate::numerics::OdeTrajectory,
) -> Result<f64, CliError> {
    let s = &traj.samples;
    let n = s.len();
    let h = traj.step;
    let mut max_abs = 0.0f64;
    for i in 0..n {
        let (x, y, yp) = s[i];
        let ypp = if i == 0 && n >= 3 {
            (-3.0 * s[0].2 + 4.0 * s[1].2 - s[2].2) / (2.0 * h)
        } else if i == n - 1 && n >= 3 {
            (3.0 * s[i].2 - 4.0 * s[i - 1].2 + s[i - 2].2) / (2.0 * h)
        } else if i == 0 {
            (s[1].2 - s[0].2) / h
        } else if i == n - 1 {
            (s[i].2 - s[i - 1].2) / h
        } else {
            (s[i + 1].2 - s[i - 1].2) / (2.0 * h)
        };
        let v = residual
            .evaluate(
                &crate::expr::Bindings::new()
                    .with("x", x)
                    .with("y", y)
                    .with("yp", yp)
                    .with("ypp", ypp),
            )
            .map_err(|e| CliError::Solver(format!("residual check failed at x = {x}: {e}")))?;
        max_abs = max_abs.max(v.abs());
    }
    Ok(max_abs)
}

/// Pick `samples`+1 rows out of a trajectory, endpoints always included.
fn downsample(samples: &[(f64, f64, f64)], target: usize) -> Vec<(f64, f64)> {
    let steps = samples.len() - 1;
    let out_n = target.clamp(1, steps);
    (0..=out_n)
        .map(|j| {
            let idx = ((j * steps) as f64 / out_n as f64).round() as usize;
            let (x, y, _) = samples[idx];
            (x, y)
        })
        .collect()
}

// ------------------------------------------------------- brach solve ----

#[derive(Debug, Serialize)]
struct BrachSolveReport {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    g: f64,
    a: f64,
    theta1: f64,
    min_time: f64,
    csv: Option<String>,
    svg: Option<String>,
}

pub fn cmd_brach_solve(args: &BrachSolveArgs) -> Result<String, CliError> {
    if args.g <= 0.0 {
        return Err(CliError::Infeasible("g must be positive".into()));
    }
    if args.samples < 1 {
        return Err(CliError::Infeasible("samples must be at least 1".into()));
    }
    let endpoints = brach::Endpoints {
        x0: args.x0,
        y0: args.y0,
        x1: args.x1,
        y1: args.y1,
    };
    let solution = brach::solve_constants(endpoints, CYCLOID_TOL)?;
    let time = brach::min_time(&solution, args.g);
    let samples = brach::sample_cycloid(&solution, args.samples);

    if let Some(path) = &args.csv {
        write_file(path, &xy_csv(&samples.points))?;
    }
    if let Some(path) = &args.svg {
        let rendered = svg::render_polylines(&[(samples.points.as_slice(), "blue")]);
        write_file(path, &rendered)?;
    }
    let report = BrachSolveReport {
        x0: args.x0,
        y0: args.y0,
        x1: args.x1,
        y1: args.y1,
        g: args.g,
        a: solution.a,
        theta1: solution.theta1,
        min_time: time,
        csv: args.csv.as_ref().map(|p| p.display().to_string()),
        svg: args.svg.as_ref().map(|p| p.display().to_string()),
    };
    if args.format == OutputFormat::Json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "endpoints: ({}, {}) -> ({}, {}), g = {}",
        report.x0, report.y0, report.x1, report.y1, report.g
    );
    let _ = writeln!(out, "a = {}", sig10(report.a));
    let _ = writeln!(out, "theta1 = {}", sig10(report.theta1));
    let _ = writeln!(out, "min time = {}", sig10(report.min_time));
    if let Some(path) = &report.csv {
        let _ = writeln!(out, "csv: {path}");
    }
    if let Some(path) = &report.svg {
        let _ = writeln!(out, "svg: {path}");
    }
    Ok(out)
}

// ----------------------------------------------------- brach compare ----

#[derive(Debug, Serialize)]
struct CompareRow {
    label: String,
    expression: Option<String>,
    time: Option<f64>,
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct CompareReport {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    g: f64,
    a: f64,
    theta1: f64,
    rows: Vec<CompareRow>,
    cycloid_fastest: bool,
    csv: Option<String>,
    svg: Option<String>,
}

pub fn cmd_brach_compare(args: &BrachCompareArgs) -> Result<String, CliError> {
    if args.g <= 0.0 {
        return Err(CliError::Infeasible("g must be positive".into()));
    }
    if args.samples < 1 {
        return Err(CliError::Infeasible("samples must be at least 1".into()));
    }
    let endpoints = brach::Endpoints {
        x0: args.x0,
        y0: args.y0,
        x1: args.x1,
        y1: args.y1,
    };
    let solution = brach::solve_constants(endpoints, CYCLOID_TOL)?;
    let cycloid_time = brach::min_time(&solution, args.g);
    let quad = QuadratureSpec::default();

    let mut rows = Vec::new();
    let mut sampled: Vec<CurveSamples> = Vec::new();
    rows.push(CompareRow {
        label: "cycloid".to_string(),
        expression: None,
        time: Some(cycloid_time),
        error: None,
    });
    sampled.push(brach::sample_cycloid(&solution, args.samples));

    for (i, text) in args.curves.iter().enumerate() {
        let label = format!("curve{}", i + 1);
        let row = match curve_row(text, &label, args, quad) {
            Ok((expression, time, samples)) => {
                sampled.push(samples);
                CompareRow {
                    label,
                    expression: Some(expression),
                    time: Some(time),
                    error: None,
                }
            }
            Err(message) => CompareRow {
                label,
                expression: None,
                time: None,
                error: Some(message),
            },
        };
        rows.push(row);
    }

    let cycloid_fastest = rows
        .iter()
        .filter_map(|r| r.time)
        .all(|t| t >= cycloid_time - 1e-12);

    if let Some(path) = &args.csv {
        write_file(path, &labeled_csv(&sampled))?;
    }
    if let Some(path) = &args.svg {
        let palette = ["black", "red"];
        let strokes: Vec<(&[(f64, f64)], &str)> = sampled
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let color = if i == 0 {
                    "blue"
                } else {
                    palette[(i - 1) % palette.len()]
                };
                (c.points.as_slice(), color)
            })
            .collect();
        write_file(path, &svg::render_polylines(&strokes))?;
    }

    let report = CompareReport {
        x0: args.x0,
        y0: args.y0,
        x1: args.x1,
        y1: args.y1,
        g: args.g,
        a: solution.a,
        theta1: solution.theta1,
        rows,
        cycloid_fastest,
        csv: args.csv.as_ref().map(|p| p.display().to_string()),
        svg: args.svg.as_ref().map(|p| p.display().to_string()),
    };
    if args.format == OutputFormat::Json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "endpoints: ({}, {}) -> ({}, {}), g = {}",
        report.x0, report.y0, report.x1, report.y1, report.g
    );
    let _ = writeln!(
        out,
        "cycloid: a = {}, theta1 = {}",
        sig10(report.a),
        sig10(report.theta1)
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<10} {:<14} curve", "label", "time");
    for row in &report.rows {
        match (&row.time, &row.error) {
            (Some(t), _) => {
                let desc = row.expression.as_deref().unwrap_or("(cycloid)");
                let _ = writeln!(out, "{:<10} {:<14} {desc}", row.label, sig10(*t));
            }
            (None, Some(e)) => {
                let _ = writeln!(out, "{:<10} failed: {e}", row.label);
            }
            _ => unreachable!("row has either a time or an error"),
        }
    }
    let _ = writeln!(out);
    if report.cycloid_fastest {
        let _ = writeln!(out, "cycloid is fastest");
    } else {
        let _ = writeln!(out, "warning: a curve undercut the cycloid time");
    }
    if let Some(path) = &report.csv {
        let _ = writeln!(out, "csv: {path}");
    }
    if let Some(path) = &report.svg {
        let _ = writeln!(out, "svg: {path}");
    }
    Ok(out)
}

/// Parse, time and sample one comparison curve. All failures are
/// row-level: the error string lands in the table instead of aborting
/// the command.
fn curve_row(
    text: &str,
    label: &str,
    args: &BrachCompareArgs,
    quad: QuadratureSpec,
) -> Result<(String, f64, CurveSamples), String> {
    let curve = parse(text).map_err(|e| e.to_string())?;
    let time = brach::descent_time(&curve, args.x0, args.x1, args.y0, args.g, quad)
        .map_err(|e| e.to_string())?;
    let samples = brach::sample_curve(&curve, args.x0, args.x1, args.samples, label)
        .map_err(|e| e.to_string())?;
    Ok((curve.to_string(), time, samples))
}

// ----------------------------------------------------------- driver ----

fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::El(args) => cmd_el(args),
        Command::Extremal(args) => cmd_extremal(args),
        Command::Brach(BrachCommand::Solve(args)) => cmd_brach_solve(args),
        Command::Brach(BrachCommand::Compare(args)) => cmd_brach_compare(args),
    };
    match result {
        Ok(report) => {
            print!("{report}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
