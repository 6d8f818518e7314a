//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration or domain
//! spec error, 3 violated precondition (non-natural point, unsupported
//! domain, failed integration).

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::extents::{extent_profile, geometric_grid, profile_limits};
use crate::numfmt::csv;
use crate::semigroup::{
    classify_semigroup_type, koenigs_catalog, measure_slope_set, trajectory_closed_form, trajectory_ode, OdeControl,
    Trajectory,
};
use crate::slope::{check_pendientes, predict, PredictConfig, Verdict};
use crate::spec_file::{self, DomainSpec};
use crate::{corpus, verify, Complex, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "starlike", version, about = "Extents, slopes and trajectories for domains starlike at infinity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Angular extent profile and its limit estimates.
    Extents(RunArgs),
    /// Slope prediction from the extent limits.
    Predict(RunArgs),
    /// Trajectories of a catalog domain and their measured slope sets.
    Simulate(SimulateArgs),
    /// Acceptance checks: `all`, a suite name or a criterion number.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Both,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Domain spec: a JSON file path or inline JSON.
    #[arg(long)]
    pub domain: String,
    /// Base point as `re,im`.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub p: String,
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Grid ratio `t_{k+1} / t_k`.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub tol_theta: Option<f64>,
    #[arg(long)]
    pub tol_limit: Option<f64>,
    /// Directory for output files; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    ClosedForm,
    Ode,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub domain: String,
    /// Starting points `re,im` in the unit disk; repeatable.
    #[arg(long = "z0", default_value = "0,0", allow_hyphen_values = true)]
    pub z0: Vec<String>,
    #[arg(long, default_value_t = 1.0)]
    pub t_start: f64,
    #[arg(long, default_value_t = 1e6)]
    pub t_end: f64,
    #[arg(long, default_value_t = 1.1)]
    pub q: f64,
    #[arg(long, value_enum, default_value = "closed-form")]
    pub method: Method,
    /// Trailing fraction of samples forming the slope window.
    #[arg(long, default_value_t = 0.5)]
    pub window_fraction: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(default_value = "all")]
    pub suite: String,
    /// Emit the reports as JSON instead of tables.
    #[arg(long)]
    pub json: bool,
}

/// Parses `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex> {
    let (a, b) = s.split_once(',').ok_or_else(|| Error::Config(format!("expected `re,im`, got `{s}`")))?;
    let f = |x: &str| x.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad number `{x}` in `{s}`")));
    Ok(Complex::new(f(a)?, f(b)?))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Io(_) | Error::Json(_) | Error::UnknownCorpus(_) | Error::InvalidDomain(_) => EXIT_CONFIG,
        Error::NotNatural { .. } | Error::OutsideNaturalDomain { .. } | Error::Precondition(_) | Error::Unsupported(_) => {
            EXIT_PRECONDITION
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Extents(a) => cmd_extents(a, out),
        Command::Predict(a) => cmd_predict(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Grid settings: explicit flags, then the corpus entry's recommendation,
/// then the defaults.
fn predict_config(a: &RunArgs, spec: &DomainSpec) -> Result<PredictConfig> {
    let base = match spec {
        DomainSpec::Corpus { name, .. } => corpus::info(name)?.predict,
        _ => PredictConfig::default(),
    };
    let cfg = PredictConfig {
        t_start: a.t_start.unwrap_or(base.t_start),
        t_end: a.t_end.unwrap_or(base.t_end),
        q: a.q.unwrap_or(base.q),
        tol_theta: a.tol_theta.unwrap_or(base.tol_theta),
        tol_limit: a.tol_limit.unwrap_or(base.tol_limit),
    };
    if !(cfg.t_start > 0.0 && cfg.t_start < cfg.t_end) {
        return Err(Error::Config(format!("need 0 < t_start < t_end, got {} and {}", cfg.t_start, cfg.t_end)));
    }
    if !(cfg.q > 1.0) {
        return Err(Error::Config(format!("grid ratio must exceed 1, got {}", cfg.q)));
    }
    if !(cfg.tol_theta > 0.0 && cfg.tol_limit > 0.0) {
        return Err(Error::Config("tolerances must be positive".into()));
    }
    Ok(cfg)
}

fn emit(out: &mut dyn Write, dir: Option<&Path>, file: &str, body: &str) -> Result<()> {
    match dir {
        Some(d) => {
            std::fs::create_dir_all(d)?;
            std::fs::write(d.join(file), body)?;
            writeln!(out, "wrote {}", d.join(file).display())?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

pub fn cmd_extents(a: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = spec_file::load(&a.domain)?;
    let cfg = predict_config(a, &spec)?;
    let dom = spec.build()?;
    let p = parse_complex(&a.p)?;
    let t0 = dom.natural_point_t0(p).ok_or(Error::NotNatural { re: p.re, im: p.im })?;
    if cfg.t_start <= t0 {
        return Err(Error::OutsideNaturalDomain { t: cfg.t_start, t0 });
    }
    let grid = geometric_grid(cfg.t_start, cfg.t_end, cfg.q)?;
    let prof = extent_profile(&dom, p, &grid, cfg.tol_theta)?;
    let format = a.format.unwrap_or(Format::Csv);
    if format != Format::Json {
        let mut body = String::from("t,alpha_minus,alpha_plus\n");
        for k in 0..prof.t.len() {
            writeln!(body, "{},{},{}", csv(prof.t[k]), csv(prof.alpha_minus[k]), csv(prof.alpha_plus[k])).unwrap();
        }
        emit(out, a.out.as_deref(), "extents.csv", &body)?;
    }
    if format != Format::Csv {
        let limits = profile_limits(&prof, cfg.tol_limit).ok();
        let doc = json!({
            "config": cfg,
            "profile": prof,
            "limits": limits.map(|(m, p)| json!({ "alpha_minus": m, "alpha_plus": p })),
        });
        emit(out, a.out.as_deref(), "extents.json", &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_predict(a: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = spec_file::load(&a.domain)?;
    let cfg = predict_config(a, &spec)?;
    let dom = spec.build()?;
    let p = parse_complex(&a.p)?;
    let pr = predict(&dom, p, &cfg)?;
    let pendientes = match pr.verdict {
        Verdict::Inconclusive | Verdict::NontangentialUnresolved => Some(check_pendientes(&dom, p, &cfg)?),
        _ => None,
    };
    let doc = json!({
        "domain": dom.kind(),
        "semigroup_type": classify_semigroup_type(&dom),
        "config": cfg,
        "prediction": pr,
        "pendientes": pendientes,
    });
    emit(out, a.out.as_deref(), "prediction.json", &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(EXIT_OK)
}

/// Slope windows narrower than this count as a singleton.
pub const SINGLETON_WIDTH: f64 = 1e-3;

fn trajectory_csv(tr: &Trajectory) -> String {
    let mut s = String::from("t,re,im,slope\n");
    for k in 0..tr.t.len() {
        writeln!(s, "{},{},{},{}", csv(tr.t[k]), csv(tr.points[k].re), csv(tr.points[k].im), csv(tr.slopes[k])).unwrap();
    }
    s
}

pub fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let dom = spec_file::load_domain(&a.domain)?;
    let k = koenigs_catalog(&dom)?;
    let z0s = a.z0.iter().map(|s| parse_complex(s)).collect::<Result<Vec<_>>>()?;
    if !(a.t_start > 0.0 && a.t_start < a.t_end && a.q > 1.0) {
        return Err(Error::Config("need 0 < t_start < t_end and q > 1".into()));
    }
    let mut grid = vec![0.0];
    grid.extend(geometric_grid(a.t_start, a.t_end, a.q)?);
    let trajs: Vec<Trajectory> = z0s
        .par_iter()
        .map(|&z| match a.method {
            Method::ClosedForm => trajectory_closed_form(&k, z, &grid),
            Method::Ode => trajectory_ode(&k, z, &grid, &OdeControl::default()),
        })
        .collect::<Result<_>>()?;
    let format = a.format.unwrap_or(Format::Both);
    let mut summary = Vec::new();
    for (i, tr) in trajs.iter().enumerate() {
        let set = measure_slope_set(tr, a.window_fraction)?;
        summary.push(json!({
            "z0": tr.z0,
            "dw_estimate": tr.dw_point,
            "slope_window": set,
            "singleton": set.width() <= SINGLETON_WIDTH,
            "max_abel_residual": tr.abel_residual.iter().copied().fold(0.0, f64::max),
            "truncated_at": tr.truncated_at,
        }));
        if format != Format::Json {
            emit(out, a.out.as_deref(), &format!("trajectory_{i}.csv"), &trajectory_csv(tr))?;
        }
    }
    if format != Format::Csv {
        let doc = json!({
            "domain": dom.kind(),
            "semigroup_type": classify_semigroup_type(&dom),
            "method": a.method.to_possible_value().map(|v| v.get_name().to_string()),
            "trajectories": summary,
        });
        emit(out, a.out.as_deref(), "summary.json", &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let ids = verify::select(&a.suite)?;
    let mut reports = Vec::new();
    for id in ids {
        let r = verify::run_criterion(id)?;
        if !a.json {
            write!(out, "{}", r.table())?;
        }
        reports.push(r);
    }
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        writeln!(out)?;
        for r in &reports {
            writeln!(out, "{}", r.summary_line())?;
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_FAILURE })
}
