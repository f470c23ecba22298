//! Command-line frontend: `embed`, `metric`, `curvature`, `propagator`, `isometry` and `verify`.
//!
//! Every subcommand takes its options as flags or from a `key = value` file passed
//! with `--config`; flags win. Grids are written `start:stop:count` (inclusive).

mod config;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::curvature::{ambient_curvature, intrinsic_curvature_oracle};
use crate::embedding::{c_of, induced_metric, ChartMap, Flrw, FlrwChart};
use crate::error::Error;
use crate::isometries::{classify_special, isometry_algebra, DEFAULT_SAMPLES, DEFAULT_TOL};
use crate::propagators::{ambient_dot, field_strength_two_point, photon_potential_ambient, scalar_two_point};
use crate::verify::{self, CRITERIA, DEFAULT_SEED};

pub use config::{Grid, Settings};

/// Failure of a CLI run, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Config { key: String, message: String },
    Domain { point: String, message: String },
    Verification { failed: usize },
    Output(String),
}

impl CliError {
    pub fn config(key: &str, message: String) -> Self {
        CliError::Config { key: key.to_string(), message }
    }

    fn domain(point: &[f64], e: Error) -> Self {
        if matches!(e, Error::Syntax { .. } | Error::UnknownFunction { .. } | Error::Invalid(_)) {
            return CliError::config("input", e.to_string());
        }
        let coords: Vec<String> = point.iter().map(|v| format!("{v}")).collect();
        CliError::Domain { point: format!("({})", coords.join(", ")), message: e.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Output(_) => 2,
            CliError::Domain { .. } => 3,
            CliError::Verification { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config { key, message } => write!(f, "config error [{key}]: {message}"),
            CliError::Domain { point, message } => write!(f, "domain error at point {point}: {message}"),
            CliError::Verification { failed } => write!(f, "verification failed: {failed} criteria did not pass"),
            CliError::Output(m) => write!(f, "output error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

const GRID_HELP: &str = "Grids are start:stop:count with both ends included, or a single number.
Config files hold `key = value` lines (keys as the long flag names, `#` starts a comment);
flags override the file.";

const FIGURE_HELP: &str = "Grids are start:stop:count with both ends included, or a single number.

Plotting recipe: sweep a grid and feed the y columns to any plotter, e.g.
  nullcone embed --k 0 --scale 1/t --t 0.1:3:60 --chi 0:3:60 --phi 0 > ds.csv
and draw (y4 - y5, y0, y1) from ds.csv as a scatter plot.";

#[derive(Parser, Debug)]
#[command(name = "nullcone", version, about = "FLRW and conformally flat spacetimes as sections of the null cone", after_help = GRID_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Embed a chart grid: chart coordinates, y^0..y^{n+1}, c(y), f(y).
    #[command(after_help = FIGURE_HELP)]
    Embed(GridArgs),
    /// Induced metric at each grid point, with its deviation from the closed form.
    #[command(after_help = GRID_HELP)]
    Metric(GridArgs),
    /// Scalar curvature, Ricci eigenvalues and oracle residual at each grid point.
    #[command(after_help = GRID_HELP)]
    Curvature(GridArgs),
    /// Two-point functions between a fixed point x and a grid of points x' (n = 4, isotropic chart).
    #[command(after_help = GRID_HELP)]
    Propagator(PropagatorArgs),
    /// Isometry algebra: dimension, null-space basis and special-case classification.
    Isometry(IsometryArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct SectionArgs {
    /// key = value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Spatial curvature: -1, 0 or +1.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Scale factor a(t): a preset name (e.g. ds_k0) or an expression in t.
    #[arg(long, allow_hyphen_values = true)]
    scale: Option<String>,
    /// Output CSV path (standard output if absent).
    #[arg(long, short)]
    output: Option<String>,
}

impl SectionArgs {
    fn flags(&self) -> Vec<(&'static str, Option<String>)> {
        vec![("k", self.k.clone()), ("scale", self.scale.clone()), ("output", self.output.clone())]
    }
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    #[command(flatten)]
    section: SectionArgs,
    /// Spacetime dimension n.
    #[arg(long)]
    n: Option<String>,
    /// Conformal time grid.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Radial coordinate grid.
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<String>,
    /// Polar angle grid (first sphere angle).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Azimuth grid (last sphere angle).
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct PropagatorArgs {
    #[command(flatten)]
    section: SectionArgs,
    /// Fixed point x = t,r1,r2,r3.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Conformal time grid of x'.
    #[arg(long, allow_hyphen_values = true)]
    tp: Option<String>,
    /// Radial grid of x' along --dir.
    #[arg(long, allow_hyphen_values = true)]
    rp: Option<String>,
    /// Direction of x' (normalized), d1,d2,d3.
    #[arg(long, allow_hyphen_values = true)]
    dir: Option<String>,
    /// Components: A<mu><nu> for the potential, F<mu><nu><rho><sigma> for the field strength.
    #[arg(long)]
    components: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct IsometryArgs {
    #[command(flatten)]
    section: SectionArgs,
    /// Conformal time interval sampled, lo:hi.
    #[arg(long, allow_hyphen_values = true)]
    t_range: Option<String>,
    /// Number of sample points.
    #[arg(long)]
    samples: Option<String>,
    /// Relative rank tolerance.
    #[arg(long)]
    tol: Option<String>,
    /// Random seed.
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    /// key = value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// List the criteria without running them.
    #[arg(long)]
    list: bool,
    /// Random seed of the randomized criteria.
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated criterion ids to run (all if absent).
    #[arg(long)]
    only: Option<String>,
}

/// Runs the CLI on `argv` (program name first) and returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(argv, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

/// Runs the CLI, writing results to `out` unless an output path is configured.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            write!(out, "{e}").map_err(io_err)?;
            return Ok(());
        }
        Err(e) => return Err(CliError::config("arguments", e.to_string().trim_end().to_string())),
    };
    match cli.command {
        Command::Embed(a) => grid_command(GridTask::Embed, &a, out),
        Command::Metric(a) => grid_command(GridTask::Metric, &a, out),
        Command::Curvature(a) => grid_command(GridTask::Curvature, &a, out),
        Command::Propagator(a) => propagator(&a, out),
        Command::Isometry(a) => isometry(&a, out),
        Command::Verify(a) => run_verify(&a, out),
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Output(e.to_string())
}

/// 17 significant digits.
fn num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

fn write_csv(settings: &Settings, out: &mut dyn Write, header: &[String], rows: &[Vec<f64>]) -> Result<(), CliError> {
    let sink: Box<dyn Write + '_> = match settings.get("output") {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::config("output", format!("cannot create {path}: {e}")))?,
        )),
        None => Box::new(out),
    };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    let csv_err = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.iter().map(|v| num(*v))).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

/// Evaluates `f` on every point in parallel; the first failing point in grid order wins.
fn evaluate<F>(points: &[Vec<f64>], f: F) -> Result<Vec<Vec<f64>>, CliError>
where
    F: Fn(&[f64]) -> crate::Result<Vec<f64>> + Sync,
{
    let results: Vec<crate::Result<Vec<f64>>> = points.par_iter().map(|p| f(p)).collect();
    results.into_iter().zip(points).map(|(r, p)| r.map_err(|e| CliError::domain(p, e))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum GridTask {
    Embed,
    Metric,
    Curvature,
}

fn chart_grid(s: &Settings, n: usize) -> Result<(Vec<String>, Vec<Vec<f64>>), CliError> {
    let t = s.grid("t", "1")?.values();
    let chi = s.grid("chi", "0.5")?.values();
    let theta = s.grid("theta", "1.5707963267948966")?.values();
    let phi = s.grid("phi", "0")?.values();
    let angles = n - 2;
    if angles < 2 && s.get("phi").is_some() {
        return Err(CliError::config("phi", format!("n = {n} has no azimuth")));
    }
    if angles < 1 && s.get("theta").is_some() {
        return Err(CliError::config("theta", format!("n = {n} has no sphere angles")));
    }
    let mut header = vec!["t".to_string(), "chi".to_string()];
    header.extend((0..angles).map(|i| match (i, angles) {
        (0, _) => "theta".to_string(),
        (i, m) if i + 1 == m => "phi".to_string(),
        (i, _) => format!("angle{}", i + 1),
    }));
    let mut points = Vec::new();
    for &tv in &t {
        for &cv in &chi {
            let first: &[f64] = if angles >= 1 { &theta } else { &[f64::NAN] };
            for &th in first {
                let last: &[f64] = if angles >= 2 { &phi } else { &[f64::NAN] };
                for &ph in last {
                    let mut p = vec![tv, cv];
                    for i in 0..angles {
                        p.push(match i {
                            0 => th,
                            i if i + 1 == angles => ph,
                            _ => std::f64::consts::FRAC_PI_2,
                        });
                    }
                    points.push(p);
                }
            }
        }
    }
    Ok((header, points))
}

fn grid_command(task: GridTask, a: &GridArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut flags = a.section.flags();
    flags.extend([("n", a.n.clone()), ("t", a.t.clone()), ("chi", a.chi.clone()), ("theta", a.theta.clone()), ("phi", a.phi.clone())]);
    let s = Settings::merge(a.section.config.as_deref(), flags)?;
    let k = s.curvature()?;
    let scale = s.scale()?;
    let n: usize = s.parse_or("n", 4)?;
    let flrw = Flrw::new(k, scale, n).map_err(|e| CliError::config("n", e.to_string()))?;
    let chart = FlrwChart::spherical(flrw.clone());
    let (mut header, points) = chart_grid(&s, n)?;
    let rows = match task {
        GridTask::Embed => {
            header.extend((0..n + 2).map(|i| format!("y{i}")));
            header.extend(["c".to_string(), "f".to_string()]);
            let f = flrw.defining_function();
            evaluate(&points, |x| {
                let y = chart.map(x)?;
                let (c, fv) = (c_of(&y), f.value(&y)?);
                Ok(x.iter().chain(&y).copied().chain([c, fv]).collect())
            })?
        }
        GridTask::Metric => {
            for i in 0..n {
                header.extend((i..n).map(|j| format!("g{i}{j}")));
            }
            header.push("closed_form_residual".into());
            evaluate(&points, |x| {
                let g = induced_metric(&chart, x)?;
                let c = chart.closed_form_metric(x)?;
                let mut row = x.to_vec();
                for i in 0..n {
                    row.extend((i..n).map(|j| g[(i, j)]));
                }
                row.push((&g - &c).amax() / c.amax());
                Ok(row)
            })?
        }
        GridTask::Curvature => {
            header.push("scalar".into());
            header.extend((0..n).map(|i| format!("ricci_ev{i}")));
            header.push("oracle_residual".into());
            evaluate(&points, |x| {
                let amb = ambient_curvature(&chart, x)?;
                let orc = intrinsic_curvature_oracle(&chart, x)?;
                let mut row = x.to_vec();
                row.push(amb.scalar);
                row.extend(ricci_eigenvalues(&amb.ricci, &amb.metric));
                row.push(amb.riemann.sub(&orc.riemann).norm() / orc.riemann.norm().max(1.0));
                Ok(row)
            })?
        }
    };
    write_csv(&s, out, &header, &rows)
}

/// Eigenvalues of `Ric^a_b` (real parts, ascending).
fn ricci_eigenvalues(ricci: &DMatrix<f64>, metric: &DMatrix<f64>) -> Vec<f64> {
    let mixed = match metric.clone().try_inverse() {
        Some(inv) => inv * ricci,
        None => return vec![f64::NAN; ricci.nrows()],
    };
    let mut ev: Vec<f64> = mixed.complex_eigenvalues().iter().map(|z| z.re).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Component {
    Potential(usize, usize),
    FieldStrength(usize, usize, usize, usize),
}

fn parse_components(src: &str) -> Result<Vec<(String, Component)>, CliError> {
    src.split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(|c| {
            let digits: Option<Vec<usize>> = c[1..].chars().map(|ch| ch.to_digit(10).map(|d| d as usize).filter(|&d| d < 4)).collect();
            let bad = || CliError::config("components", format!("cannot parse component `{c}`"));
            let d = digits.ok_or_else(bad)?;
            let comp = match (&c[..1], d.as_slice()) {
                ("A", &[m, n]) => Component::Potential(m, n),
                ("F", &[m, n, r, s]) => Component::FieldStrength(m, n, r, s),
                _ => return Err(bad()),
            };
            Ok((c.to_string(), comp))
        })
        .collect()
}

fn propagator(a: &PropagatorArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut flags = a.section.flags();
    flags.extend([
        ("x", a.x.clone()),
        ("tp", a.tp.clone()),
        ("rp", a.rp.clone()),
        ("dir", a.dir.clone()),
        ("components", a.components.clone()),
    ]);
    let s = Settings::merge(a.section.config.as_deref(), flags)?;
    let k = s.curvature()?;
    let flrw = Flrw::n4(k, s.scale()?);
    let x = s.vector("x", "1,0,0,0", 4)?;
    let dir = s.vector("dir", "1,0,0", 3)?;
    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(CliError::config("dir", "direction must be nonzero".into()));
    }
    let components = parse_components(s.get("components").unwrap_or("A00,A01,A11,F0101,F0102,F1212"))?;
    let tp = s.grid("tp", "0.5:1.5:5")?.values();
    let rp = s.grid("rp", "0.5")?.values();
    let points: Vec<Vec<f64>> = tp
        .iter()
        .flat_map(|&t| rp.iter().map(move |&r| (t, r)))
        .map(|(t, r)| {
            let mut p = vec![t];
            p.extend(dir.iter().map(|d| r * d / norm));
            p
        })
        .collect();
    let mut header: Vec<String> = ["tp", "r1p", "r2p", "r3p", "ydot", "scalar"].iter().map(|h| h.to_string()).collect();
    header.extend(components.iter().map(|(name, _)| name.clone()));
    let needs_a = components.iter().any(|(_, c)| matches!(c, Component::Potential(..)));
    let needs_f = components.iter().any(|(_, c)| matches!(c, Component::FieldStrength(..)));
    let rows = evaluate(&points, |xp| {
        let sep = ambient_dot(&flrw, &x, xp)?;
        sep.nonsingular()?;
        let mut row = xp.to_vec();
        row.push(sep.ydot);
        row.push(scalar_two_point(&flrw, &x, xp)?);
        let pot = if needs_a { Some(photon_potential_ambient(&flrw, &x, xp)?) } else { None };
        let fs = if needs_f { Some(field_strength_two_point(k, &x, xp)?) } else { None };
        for (_, c) in &components {
            row.push(match *c {
                Component::Potential(m, n) => pot.as_ref().map_or(f64::NAN, |p| p[(m, n)]),
                Component::FieldStrength(m, n, r, q) => fs.as_ref().map_or(f64::NAN, |f| f.get(m, n, r, q)),
            });
        }
        Ok(row)
    })?;
    write_csv(&s, out, &header, &rows)
}

fn isometry(a: &IsometryArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut flags = a.section.flags();
    flags.extend([("t-range", a.t_range.clone()), ("samples", a.samples.clone()), ("tol", a.tol.clone()), ("seed", a.seed.clone())]);
    let s = Settings::merge(a.section.config.as_deref(), flags)?;
    let k = s.curvature()?;
    let scale = s.scale()?;
    let range = s.time_range("t-range", &scale, (0.3, 2.0))?;
    let samples: usize = s.parse_or("samples", DEFAULT_SAMPLES)?;
    let tol: f64 = s.parse_or("tol", DEFAULT_TOL)?;
    let seed: u64 = s.parse_or("seed", DEFAULT_SEED)?;
    let flrw = Flrw::n4(k, scale);
    let at_range = |e| CliError::domain(&[range.0, range.1], e);
    let class = classify_special(&flrw, range, seed).map_err(at_range)?;
    let algebra = isometry_algebra(&flrw, range, samples, tol, seed).map_err(at_range)?;
    let mut text = format!("dimension={} classification={}\n", class.dimension, class.case.name());
    if let Some(ode) = class.ode {
        text.push_str(&format!("ode={ode}\n"));
    }
    if let Some(t0) = class.offset {
        text.push_str(&format!("offset={}\n", num(t0)));
    }
    if algebra.ill_conditioned {
        text.push_str("warning=singular values near the rank tolerance\n");
    }
    let dim = flrw.ambient_dim();
    let header: Vec<String> = (0..dim).flat_map(|a| (a + 1..dim).map(move |b| format!("J{a}{b}"))).collect();
    let rows: Vec<Vec<f64>> = algebra.basis.iter().map(|g| g.params().to_vec()).collect();
    out.write_all(text.as_bytes()).map_err(io_err)?;
    if s.get("output").is_none() {
        writeln!(out, "basis:").map_err(io_err)?;
    }
    write_csv(&s, out, &header, &rows)
}

fn run_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let s = Settings::merge(a.config.as_deref(), vec![("seed", a.seed.clone()), ("only", a.only.clone())])?;
    if a.list {
        for c in CRITERIA {
            writeln!(out, "{:>2}  {:<26} budget {:>2} s  {}", c.id, c.name, c.budget.as_secs(), c.summary).map_err(io_err)?;
        }
        return Ok(());
    }
    let seed: u64 = s.parse_or("seed", DEFAULT_SEED)?;
    let ids: Vec<u8> = match s.get("only") {
        None => CRITERIA.iter().map(|c| c.id).collect(),
        Some(list) => list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<u8>()
                    .ok()
                    .filter(|id| CRITERIA.iter().any(|c| c.id == *id))
                    .ok_or_else(|| CliError::config("only", format!("unknown criterion `{}`", v.trim())))
            })
            .collect::<Result<_, _>>()?,
    };
    let mut failed = 0;
    for id in &ids {
        let outcome = verify::run(*id, seed).expect("validated id");
        if !outcome.passed() {
            failed += 1;
        }
        writeln!(out, "{outcome}").map_err(io_err)?;
    }
    writeln!(out, "{}/{} criteria passed (seed {seed})", ids.len() - failed, ids.len()).map_err(io_err)?;
    if failed > 0 {
        return Err(CliError::Verification { failed });
    }
    Ok(())
}
