//! Command-line front end: argument parsing, config files and output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::checks::{oracle_report, Discrepancy};
use crate::error::Error;
use crate::index::{verify_index_with, winding_contributions, winding_numeric_parts, IndexReport};
use crate::model::ModelParams;
use crate::scattering::{fourier_kernel, sigma_samples};
use crate::solutions::{Side, SpectralPoint};
use crate::specfun::{gauss_2f1, HypergeometricArgs};
use crate::spectral::{
    bound_states, resolvent_boundary_kernel, resolvent_kernel, spectral_density_kernel,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Sample points: `start:stop:count` (inclusive, count >= 2), a comma list,
/// or a single number. In JSON also a number or an array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "Vec<f64>")]
pub struct Grid(pub Vec<f64>);

#[derive(Deserialize)]
#[serde(untagged)]
enum GridRepr {
    Number(f64),
    List(Vec<f64>),
    Text(String),
}

impl TryFrom<GridRepr> for Grid {
    type Error = String;

    fn try_from(r: GridRepr) -> Result<Self, String> {
        match r {
            GridRepr::Number(v) => Ok(Grid(vec![v])),
            GridRepr::List(v) if v.is_empty() => Err("empty list".into()),
            GridRepr::List(v) => Ok(Grid(v)),
            GridRepr::Text(s) => s.parse(),
        }
    }
}

impl From<Grid> for Vec<f64> {
    fn from(g: Grid) -> Self {
        g.0
    }
}

fn parse_num(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v)
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.len() {
            1 => s
                .split(',')
                .map(parse_num)
                .collect::<Result<Vec<_>, _>>()
                .map(Grid),
            3 => {
                let a = parse_num(parts[0])?;
                let b = parse_num(parts[1])?;
                let n: usize = parts[2]
                    .trim()
                    .parse()
                    .map_err(|_| format!("range count `{}` is not an integer", parts[2]))?;
                if n < 2 {
                    return Err(format!("range count must be at least 2, got {n}"));
                }
                Ok(Grid(
                    (0..n)
                        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                        .collect(),
                ))
            }
            _ => Err(format!("malformed range `{s}`, expected start:stop:count")),
        }
    }
}

/// A complex number `re,im` or `re`; in JSON also a number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CplxRepr", into = "[f64; 2]")]
pub struct Cplx(pub Complex64);

#[derive(Deserialize)]
#[serde(untagged)]
enum CplxRepr {
    Number(f64),
    Pair([f64; 2]),
    Text(String),
}

impl TryFrom<CplxRepr> for Cplx {
    type Error = String;

    fn try_from(r: CplxRepr) -> Result<Self, String> {
        match r {
            CplxRepr::Number(v) => Ok(Cplx(Complex64::new(v, 0.0))),
            CplxRepr::Pair([a, b]) => Ok(Cplx(Complex64::new(a, b))),
            CplxRepr::Text(s) => s.parse(),
        }
    }
}

impl From<Cplx> for [f64; 2] {
    fn from(c: Cplx) -> Self {
        [c.0.re, c.0.im]
    }
}

impl FromStr for Cplx {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [re] => Ok(Cplx(Complex64::new(parse_num(re)?, 0.0))),
            [re, im] => Ok(Cplx(Complex64::new(parse_num(re)?, parse_num(im)?))),
            _ => Err(format!("malformed complex number `{s}`, expected re,im")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    /// Resolvent at an interior point zeta
    Resolvent,
    /// Boundary value of the resolvent at energy k^2
    Boundary,
    /// Spectral density
    Density,
    /// Generalized Fourier kernel
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Plus,
    Minus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Plus => Side::Plus,
            SideArg::Minus => Side::Minus,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sl2radial", version, about = "Spectral and scattering data of D_{mu,nu}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scattering function samples
    Sigma(SigmaArgs),
    /// Bound-state count and levels
    BoundStates(BoundStatesArgs),
    /// Spectral density p(k^2; x, y)
    Density(DensityArgs),
    /// Resolvent, boundary, density or Fourier kernel on a grid
    Kernel(KernelArgs),
    /// Partial windings of the edge function
    Winding(WindingArgs),
    /// Index theorem check over a parameter list or grid
    VerifyIndex(VerifyIndexArgs),
    /// Closed forms versus the ODE oracle
    OracleCheck(OracleCheckArgs),
    /// Gauss hypergeometric function
    #[command(name = "eval-2f1")]
    Eval2f1(Eval2f1Args),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub k: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundStatesArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub k: Option<Grid>,
    #[arg(long)]
    pub x: Option<Grid>,
    #[arg(long)]
    pub y: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long, value_enum, default_value_t = KernelKind::Resolvent)]
    pub kind: KernelKind,
    /// Interior point `re,im` (resolvent)
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: Option<Cplx>,
    /// Momenta (boundary, density, fourier)
    #[arg(long)]
    pub k: Option<Grid>,
    #[arg(long, value_enum, default_value_t = SideArg::Plus)]
    pub side: SideArg,
    #[arg(long)]
    pub x: Option<Grid>,
    /// Second point (not used by fourier)
    #[arg(long)]
    pub y: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindingArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long, default_value_t = crate::index::DEFAULT_K_MAX)]
    pub k_max: f64,
    #[arg(long, default_value_t = crate::index::DEFAULT_S_MAX)]
    pub s_max: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyIndexArgs {
    /// mu values; the check runs on the product with the nu values
    #[arg(long)]
    pub mu: Option<Grid>,
    #[arg(long)]
    pub nu: Option<Grid>,
    /// Explicit (mu, nu) list, config file only; replaces the grid
    #[arg(skip)]
    pub pairs: Option<Vec<[f64; 2]>>,
    #[arg(long, default_value_t = crate::index::DEFAULT_K_MAX)]
    pub k_max: f64,
    #[arg(long, default_value_t = crate::index::DEFAULT_S_MAX)]
    pub s_max: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCheckArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    /// ODE tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Eval2f1Args {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

/// Overlay the keys of a JSON config file on the flag values.
fn with_config<T: Serialize + DeserializeOwned>(args: T, path: Option<&Path>) -> Result<T, CliError> {
    let Some(path) = path else {
        return Ok(args);
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let overlay: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    let Value::Object(overlay) = overlay else {
        return usage(format!("config {} must hold a JSON object", path.display()));
    };
    let mut base = match serde_json::to_value(&args) {
        Ok(Value::Object(m)) => m,
        _ => return usage("internal: arguments do not serialize to an object"),
    };
    for (k, v) in overlay {
        base.insert(k.replace('-', "_"), v);
    }
    serde_json::from_value(Value::Object(base))
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
}

fn params(mu: Option<f64>, nu: Option<f64>) -> Result<ModelParams, CliError> {
    let (Some(mu), Some(nu)) = (mu, nu) else {
        return usage("both --mu and --nu are required");
    };
    ModelParams::new(mu, nu).map_err(|e| CliError::Usage(e.to_string()))
}

fn require<T>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

fn positive_grid(g: Option<Grid>, name: &str) -> Result<Vec<f64>, CliError> {
    let g = require(g, name)?.0;
    if g.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
        return usage(format!("--{name} values must be positive"));
    }
    Ok(g)
}

/// Shortest round-trip text with integral values written without a
/// fractional part.
pub fn fmt_num(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:?}")
    }
}

/// Replace integral floats by integers so that e.g. 4.0 is written as 4.
fn integralize(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() && f == f.trunc() && f.abs() < 1e15 => json!(f as i64),
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(integralize).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, integralize(v))).collect()),
        other => other,
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("output types serialize");
    integralize(value).to_string()
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r.iter().map(|&v| fmt_num(v)))
                        .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: Map<String, Value> = self
                            .header
                            .iter()
                            .zip(r)
                            .map(|(h, v)| (h.to_string(), json!(v)))
                            .collect();
                        Value::Object(m)
                    })
                    .collect();
                to_json(&rows) + "\n"
            }
        }
    }
}

fn emit(text: &str, output: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn cmd_sigma(a: SigmaArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = with_config(a.clone(), a.config.as_deref())?;
    let p = params(a.mu, a.nu)?;
    let ks = positive_grid(a.k, "k")?;
    if ks.windows(2).any(|w| w[1] <= w[0]) {
        return usage("--k values must be increasing");
    }
    let rows = sigma_samples(&p, &ks)?
        .into_iter()
        .map(|s| vec![s.k, s.sigma[0], s.sigma[1], s.phase])
        .collect();
    let t = Table {
        header: vec!["k", "sigma_re", "sigma_im", "phase"],
        rows,
    };
    emit(&t.render(a.format), a.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LevelOut {
    zeta: f64,
    energy: f64,
}

#[derive(Serialize)]
struct BoundOut {
    count: usize,
    levels: Vec<LevelOut>,
}

fn cmd_bound_states(a: BoundStatesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = with_config(a.clone(), a.config.as_deref())?;
    let p = params(a.mu, a.nu)?;
    let r = bound_states(&p);
    let o = BoundOut {
        count: r.count,
        levels: r
            .levels
            .iter()
            .map(|l| LevelOut {
                zeta: l.zeta,
                energy: l.energy,
            })
            .collect(),
    };
    emit(&(to_json(&o) + "\n"), a.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

/// All (k, x, y) triples in grid order, evaluated concurrently.
fn triples<F>(ks: &[f64], xs: &[f64], ys: &[f64], f: F) -> Result<Vec<Vec<f64>>, CliError>
where
    F: Fn(f64, f64, f64) -> crate::Result<Vec<f64>> + Sync,
{
    let pts: Vec<(f64, f64, f64)> = ks
        .iter()
        .flat_map(|&k| xs.iter().flat_map(move |&x| ys.iter().map(move |&y| (k, x, y))))
        .collect();
    Ok(pts
        .par_iter()
        .map(|&(k, x, y)| f(k, x, y))
        .collect::<crate::Result<Vec<_>>>()?)
}

fn cmd_density(a: DensityArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = with_config(a.clone(), a.config.as_deref())?;
    let p = params(a.mu, a.nu)?;
    let ks = positive_grid(a.k, "k")?;
    let xs = positive_grid(a.x, "x")?;
    let ys = positive_grid(a.y, "y")?;
    let rows = triples(&ks, &xs, &ys, |k, x, y| {
        Ok(vec![k, x, y, spectral_density_kernel(&p, k, x, y)?.re])
    })?;
    let t = Table {
        header: vec!["k", "x", "y", "p"],
        rows,
    };
    emit(&t.render(a.format), a.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_kernel(a: KernelArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = with_config(a.clone(), a.config.as_deref())?;
    let p = params(a.mu, a.nu)?;
    let xs = positive_grid(a.x, "x")?;
    let side: Side = a.side.into();
    let t = match a.kind {
        KernelKind::Resolvent => {
            let zeta = require(a.zeta, "zeta")?.0;
            let pt = SpectralPoint::interior(zeta).map_err(|e| CliError::Usage(e.to_string()))?;
            let ys = positive_grid(a.y, "y")?;
            let rows = triples(&[0.0], &xs, &ys, |_, x, y| {
                let v = resolvent_kernel(&p, pt, x, y)?;
                Ok(vec![x, y, v.re, v.im])
            })?;
            Table {
                header: vec!["x", "y", "re", "im"],
                rows,
            }
        }
        KernelKind::Boundary | KernelKind::Density => {
            let ks = positive_grid(a.k, "k")?;
            let ys = positive_grid(a.y, "y")?;
            let kind = a.kind;
            let rows = triples(&ks, &xs, &ys, |k, x, y| {
                let v = if kind == KernelKind::Boundary {
                    resolvent_boundary_kernel(&p, k, side, x, y)?
                } else {
                    spectral_density_kernel(&p, k, x, y)?
                };
                Ok(vec![k, x, y, v.re, v.im])
            })?;
            Table {
                header: vec!["k", "x", "y", "re", "im"],
                rows,
            }
        }
        KernelKind::Fourier => {
            let ks = positive_grid(a.k, "k")?;
            let rows = triples(&ks, &xs, &[0.0], |k, x, _| {
                let v = fourier_kernel(&p, side, x, k)?;
                Ok(vec![k, x, v.re, v.im])
            })?;
            Table {
                header: vec!["k", "x", "re", "im"],
                rows,
            }
        }
    };
    emit(&t.render(a.format), a.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn check_truncation(k_max: f64, s_max: f64) -> Result<(), CliError> {
    if !(k_max > 1.0 && s_max > 0.0 && k_max.is_finite() && s_max.is_finite()) {
        return usage("--k-max must exceed 1 and --s-max must be positive");
    }
    Ok(())
}

#[derive(Serialize)]
struct WindingOut {
    mu: f64,
    nu: f64,
    omega_closed: [f64; 4],
    omega_numeric: [f64; 4],
    winding_closed: f64,
    winding_numeric: f64,
}

fn cmd_winding(a: WindingArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = with_config(a.clone(), a.config.as_deref())?;
    let p = params(a.mu, a.nu)?;
    check_truncation(a.k_max, a.s_max)?;
    let closed = winding_contributions(&p);
    let numeric = winding_numeric_parts(&p, a.k_max, a.s_max)?;
    let o = WindingOut {
        mu: p.mu,
        nu: p.nu,
        omega_closed: closed,
        omega_numeric: numeric,
        winding_closed: closed.iter().sum(),
        winding_numeric: numeric.iter().sum(),
    };
    emit(&(to_json(&o) + "\n"), a.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_verify_index(a: VerifyIndexArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = with_config(a.clone(), a.config.as_deref())?;
    check_truncation(a.k_max, a.s_max)?;
    let pairs: Vec<(f64, f64)> = match &a.pairs {
        Some(list) => list.iter().map(|&[m, n]| (m, n)).collect(),
        None => {
            let mus = require(a.mu.clone(), "mu")?.0;
            let nus = require(a.nu.clone(), "nu")?.0;
            mus.iter()
                .flat_map(|&m| nus.iter().map(move |&n| (m, n)))
                .collect()
        }
    };
    if pairs.is_empty() {
        return usage("no (mu, nu) pairs given");
    }
    let ps: Vec<ModelParams> = pairs
        .iter()
        .map(|&(m, n)| params(Some(m), Some(n)))
        .collect::<Result<_, _>>()?;
    let reports: Vec<IndexReport> = ps
        .par_iter()
        .map(|p| verify_index_with(p, a.k_max, a.s_max))
        .collect::<crate::Result<_>>()?;
    emit(&(to_json(&reports) + "\n"), a.output.as_deref(), out)?;
    Ok(if reports.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn cmd_oracle_check(a: OracleCheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = with_config(a.clone(), a.config.as_deref())?;
    let p = params(a.mu, a.nu)?;
    if !(1e-13..=1e-3).contains(&a.tol) {
        return usage("--tol must lie in [1e-13, 1e-3]");
    }
    let report: Vec<Discrepancy> = oracle_report(&p, a.tol)?;
    let text = match a.format {
        Format::Json => to_json(&report) + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut lines = vec![vec![
                "check".to_string(),
                "max_discrepancy".into(),
                "tolerance".into(),
                "pass".into(),
            ]];
            for d in &report {
                lines.push(vec![
                    d.check.clone(),
                    fmt_num(d.max_discrepancy),
                    fmt_num(d.tolerance),
                    d.pass.to_string(),
                ]);
            }
            for l in lines {
                w.write_record(l).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
        }
    };
    emit(&text, a.output.as_deref(), out)?;
    Ok(if report.iter().all(|d| d.pass) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn cmd_eval_2f1(a: Eval2f1Args, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = with_config(a.clone(), a.config.as_deref())?;
    let (ca, cb, cc) = (require(a.a, "a")?, require(a.b, "b")?, require(a.c, "c")?);
    let z = require(a.z, "z")?;
    let v = gauss_2f1(HypergeometricArgs::new(ca.0, cb.0, cc.0, z))?;
    let o = json!({
        "a": [ca.0.re, ca.0.im],
        "b": [cb.0.re, cb.0.im],
        "c": [cc.0.re, cc.0.im],
        "z": z,
        "value": [v.re, v.im],
    });
    emit(&(to_json(&o) + "\n"), a.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

pub fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Sigma(a) => cmd_sigma(a, out),
        Command::BoundStates(a) => cmd_bound_states(a, out),
        Command::Density(a) => cmd_density(a, out),
        Command::Kernel(a) => cmd_kernel(a, out),
        Command::Winding(a) => cmd_winding(a, out),
        Command::VerifyIndex(a) => cmd_verify_index(a, out),
        Command::OracleCheck(a) => cmd_oracle_check(a, out),
        Command::Eval2f1(a) => cmd_eval_2f1(a, out),
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
