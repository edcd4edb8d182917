mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;
use thiserror::Error;

use swcyl::bessel::bessel_j;
use swcyl::circle::ModeBand;
use swcyl::config::RunConfig;
use swcyl::io::{read_wigner_symbol, write_wigner_symbol};
use swcyl::swkernel::{l_coeff, Quantizer, SymbolFunction, SymbolShape, HERMITIAN_TOL};
use swcyl::verify::{check_overlap_structure, flat_suite, overlap_modes, overlap_trace, run_suites, PropertyReport};
use swcyl::SwError;

use output::{Emitter, Format};

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

/// Tolerance for the star-product integral identity.
const STAR_TRACE_TOL: f64 = 5e-3;
/// Band for the overlap structure check on constant kernels.
const OVERLAP_STRUCTURE_BAND: usize = 32;

#[derive(Parser)]
#[command(name = "swcyl", version, about = "Stratonovich-Weyl quantization on the E(2) cylinder")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat key=value config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent (required by `star`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; `ltable` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Overrides `run.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every property suite for the configured kernel.
    Verify,
    /// Tabulate L_n(j) for |n| <= ltable.n_max and j in ltable.j.
    Ltable,
    /// Star product of two Wigner symbol files, written to --out.
    Star { f: PathBuf, g: PathBuf },
    /// tr[Omega(u) Omega(v)] at overlap.u, overlap.v.
    Overlap,
    /// Flat-space Moyal checks on the flat.Q / flat.G grid.
    FlatDemo,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Ltable => "ltable",
            Command::Star { .. } => "star",
            Command::Overlap => "overlap",
            Command::FlatDemo => "flat-demo",
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Config(SwError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Run(#[from] SwError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => EXIT_CONFIG,
            _ => EXIT_RUNTIME,
        }
    }
}

fn load_config(path: Option<&Path>, seed: Option<u64>) -> Result<RunConfig, CliError> {
    let mut cfg = match path {
        Some(p) => RunConfig::from_file(p).map_err(CliError::Config)?,
        None => RunConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("swcyl {}: {e}", cli.command.name());
            ExitCode::from(e.code())
        }
    }
}

/// Returns whether every emitted report passed.
fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = load_config(cli.config.as_deref(), cli.seed)?;
    let default_format = if matches!(cli.command, Command::Ltable) { Format::Csv } else { Format::Json };
    let format = cli.format.unwrap_or(default_format);
    let symbol = cfg.symbol().map_err(CliError::Config)?;

    let (reports, table) = match &cli.command {
        Command::Verify => (run_suites(&symbol, &cfg.suite_settings())?, None),
        Command::Ltable => (Vec::new(), Some(ltable(&symbol, &cfg))),
        Command::Star { f, g } => {
            let out = cli.out.as_deref().ok_or_else(|| CliError::Usage("star needs --out for the product symbol".into()))?;
            (vec![star(&symbol, &cfg, f, g, out)?], None)
        }
        Command::Overlap => (overlap(&symbol, &cfg)?, None),
        Command::FlatDemo => (flat_suite(cfg.flat)?, None),
    };
    let mut reports = reports;
    cfg.apply_tolerances(&mut reports);

    // star writes its symbol to --out; its reports go to stdout
    let report_out = if matches!(cli.command, Command::Star { .. }) { None } else { cli.out.as_deref() };
    let mut em = Emitter::open(format, report_out)?;
    em.header(cli.command.name(), cfg.seed, &cfg.resolved())?;
    if let Some((columns, rows)) = table {
        em.table(&columns, &rows)?;
    } else {
        em.reports(&reports)?;
    }
    em.finish()?;
    Ok(reports.iter().all(|r| r.pass))
}

fn is_unit_constant(a: &SymbolFunction) -> bool {
    matches!(a.shape(), SymbolShape::Constant(c) if (c.re - 1.0).abs() < 1e-15 && c.im.abs() < 1e-15)
}

fn ltable(a: &SymbolFunction, cfg: &RunConfig) -> (Vec<&'static str>, Vec<Vec<Value>>) {
    let bessel = is_unit_constant(a);
    let n_max = cfg.ltable_n_max as i64;
    let mut rows = Vec::new();
    for n in -n_max..=n_max {
        for &j in &cfg.ltable_j {
            let l = l_coeff(a, n, j);
            let mut row = vec![Value::from(n), Value::from(j), Value::from(l.re), Value::from(l.im)];
            if bessel {
                let jn = bessel_j(n, 2.0 * j);
                row.push(Value::from(jn));
                row.push(Value::from((l.re - jn).hypot(l.im)));
            } else {
                row.extend([Value::Null, Value::Null]);
            }
            rows.push(row);
        }
    }
    (vec!["n", "j", "re_L", "im_L", "bessel_J_n_2j", "abs_diff"], rows)
}

fn star(a: &SymbolFunction, cfg: &RunConfig, f: &Path, g: &Path, out: &Path) -> Result<PropertyReport, CliError> {
    let f = read_wigner_symbol(f)?;
    let g = read_wigner_symbol(g)?;
    if f.grid() != g.grid() {
        return Err(SwError::GridMismatch { left: f.grid().describe(), right: g.grid().describe() }.into());
    }
    let band = ModeBand::new(cfg.star_band)?;
    let measure = cfg.measure.unwrap_or_else(|| a.default_measure());
    let q = Quantizer::new(a, *f.grid(), band, measure)?;
    let fg = q.star(&f, &g)?;
    write_wigner_symbol(out, &fg)?;
    // ∫ f*g dμ against ∫ f·g dμ; they agree only when ∫Ω dμ = κ·I has κ = 1
    let kappa = std::f64::consts::PI * measure * (a.value(0.0) + a.value(std::f64::consts::PI)).re;
    let lhs = q.integrate(&fg)?;
    let rhs = q.integrate(&f.mul(&g)?)?;
    Ok(PropertyReport::new(format!("star.{}.trace-identity", a.name()), (lhs - rhs).norm(), STAR_TRACE_TOL)
        .with("integral_star", [lhs.re, lhs.im])
        .with("integral_pointwise", [rhs.re, rhs.im])
        .with("grid", f.grid().describe())
        .with("band", band.n())
        .with("measure", measure)
        .with("kappa", kappa))
}

fn overlap(a: &SymbolFunction, cfg: &RunConfig) -> Result<Vec<PropertyReport>, CliError> {
    let band = ModeBand::new(cfg.band)?;
    let (u, v) = (cfg.overlap_u, cfg.overlap_v);
    // the overlap is a distribution in α − α'; the band sum is reported with its
    // α-mode coefficients, and the check is that it is real for Hermitian Ω
    let t = overlap_trace(a, &u, &v, band)?;
    let half = band.interior() as i64;
    let modes: Vec<[f64; 3]> = overlap_modes(a, u.j, v.j, band)
        .iter()
        .zip(-half..=half)
        .map(|(c, k)| [k as f64, c.re, c.im])
        .collect();
    let mut out = vec![PropertyReport::new(format!("overlap.{}.trace", a.name()), t.value.im.abs(), HERMITIAN_TOL)
        .with("value", [t.value.re, t.value.im])
        .with("tail", t.tail)
        .with("u", u)
        .with("v", v)
        .with("band", band.n())
        .with("alpha_modes", modes)];
    if matches!(a.shape(), SymbolShape::Constant(_)) {
        out.extend(check_overlap_structure(a, ModeBand::new(OVERLAP_STRUCTURE_BAND)?));
    }
    Ok(out)
}
