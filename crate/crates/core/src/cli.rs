//! Command-line front end. [`run`] parses arguments, dispatches to a
//! subcommand and returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | invalid configuration or arguments |
//! | 2 | numerical failure |
//! | 3 | Poincaré solution terminated at an interior point `t0` |
//! | 4 | `verify` found a failing check |

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::asymptotics::{
    a_coefficients, lerch_phi_via, moment_expansion, phi_v_a_coefficients, phi_v_l_series,
    reciprocal_moments, LerchPath, LERCH_RADIUS,
};
use crate::error::{Error, Result};
use crate::io::{json_f64, parse_grid, sink, write_csv};
use crate::kernel::{defect_with, estimate_c_with, kernel_density, KernelSeries};
use crate::poincare::{cusp_data, origin_fit, solve_poincare};
use crate::profiles::{monge_ampere_density, ProfileSpec, RadialProfile};
use crate::series::Rational;
use crate::verify;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "KEPLER_BALANCE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "kepler-balance",
    version,
    about = "Radial Bergman kernels, balanced defects and Poincaré metrics on the Kepler ball"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel diagonal F(t) and the balanced defect on a grid
    Kernel(KernelArgs),
    /// Balanced defect F(t) - c/f(t)^{n+1} (requires --c)
    Defect(KernelArgs),
    /// Solve the Poincaré equation for one value of c
    Poincare(PoincareArgs),
    /// Coefficients A_m of 1/c_k for the φ_v density
    Asymptotics(AsymptoticsArgs),
    /// Lerch transcendent derivatives by direct summation and boundary expansion
    Lerch(LerchArgs),
    /// Profile values, derivatives and Monge–Ampère density
    ProfileEval(ProfileEvalArgs),
    /// Run the self-check suite
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Points at which to evaluate.
#[derive(Debug, Args)]
pub struct PointArgs {
    /// Grid `start:stop:count` inside (0, 1)
    #[arg(long)]
    pub grid: Option<String>,
    /// Single evaluation point (repeatable)
    #[arg(long = "t")]
    pub t: Vec<f64>,
}

impl PointArgs {
    fn points(&self) -> Result<Vec<f64>> {
        let mut pts = self.t.clone();
        if let Some(g) = &self.grid {
            pts.extend(parse_grid(g)?);
        }
        if pts.is_empty() {
            return Err(Error::Config("no evaluation points (use --grid or --t)".into()));
        }
        Ok(pts)
    }
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    /// Inline profile `kind:key=value,...` or a JSON file
    #[arg(long)]
    pub profile: String,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Constant in the defect: a number or `auto`
    #[arg(long)]
    pub c: Option<String>,
    #[command(flatten)]
    pub points: PointArgs,
    /// Relative truncation tolerance of the kernel series
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PoincareArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub tmin: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// File receiving the solution CSV
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `json` prints the summary, `csv` the solution, to stdout
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    /// Parameter v: an integer, decimal or fraction `p/q` (exact), or any float
    #[arg(long)]
    pub v: String,
    /// Largest index m
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LerchArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub s: f64,
    /// Number of s-derivatives
    #[arg(long, default_value_t = 0)]
    pub deriv: usize,
    #[command(flatten)]
    pub points: PointArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ProfileEvalArgs {
    #[arg(long)]
    pub profile: String,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[command(flatten)]
    pub points: PointArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to these check tags (comma separated or repeated)
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Profile to validate before running the checks
    #[arg(long)]
    pub profile: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Outcome of a subcommand that completed without error.
enum Outcome {
    Ok,
    Terminated,
    VerifyFailed,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return 1;
    }
    match dispatch(&cli.command) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Terminated) => 3,
        Ok(Outcome::VerifyFailed) => 4,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error: 1 for configuration problems, 2 for numerical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Domain { .. } | Error::Precondition(_) | Error::Capability(_) => 1,
        _ => 2,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Kernel(a) => cmd_kernel(a, false),
        Command::Defect(a) => cmd_kernel(a, true),
        Command::Poincare(a) => cmd_poincare(a),
        Command::Asymptotics(a) => cmd_asymptotics(a),
        Command::Lerch(a) => cmd_lerch(a),
        Command::ProfileEval(a) => cmd_profile_eval(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Reads a profile from a JSON file (a path ending in `.json` or naming an
/// existing file) or from the inline syntax.
pub fn load_profile(arg: &str) -> Result<RadialProfile> {
    let path = Path::new(arg);
    let spec = if arg.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read profile {arg}: {e}")))?;
        ProfileSpec::from_json(&text)?
    } else {
        ProfileSpec::parse_inline(arg)?
    };
    RadialProfile::from_spec(&spec)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Config(format!("write failed: {e}"))
}

fn emit_json(out: Option<&Path>, value: &Value) -> Result<()> {
    let mut w = sink(out)?;
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    writeln!(w, "{text}").map_err(io_err)?;
    w.flush().map_err(io_err)
}

fn emit_table(
    out: Option<&Path>,
    format: Format,
    header: &[&str],
    rows: &[Vec<f64>],
    extra: Value,
) -> Result<()> {
    match format {
        Format::Csv => write_csv(&mut *sink(out)?, header, rows).map_err(io_err),
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|r| {
                    Value::Object(
                        header
                            .iter()
                            .zip(r)
                            .map(|(h, x)| (h.to_string(), json_f64(*x)))
                            .collect(),
                    )
                })
                .collect();
            let mut doc = extra;
            doc["rows"] = Value::Array(records);
            emit_json(out, &doc)
        }
    }
}

fn cmd_kernel(a: &KernelArgs, defect_only: bool) -> Result<Outcome> {
    if !(a.tol > 0.0) {
        return Err(Error::Config(format!("--tol must be positive, got {}", a.tol)));
    }
    if a.n < 2 {
        return Err(Error::Config(format!("--n must be at least 2, got {}", a.n)));
    }
    let points = a.points.points()?;
    let profile = load_profile(&a.profile)?;
    let mut ks = KernelSeries::new(kernel_density(&profile, a.n), a.n, a.tol)?;
    let c = match a.c.as_deref() {
        Some("auto") => Some(estimate_c_with(&profile, a.n, &mut ks)?.c),
        Some(text) => Some(
            f64::from_str(text)
                .map_err(|_| Error::Config(format!("--c must be a number or auto, got {text:?}")))?,
        ),
        None if defect_only => {
            return Err(Error::Config("defect needs --c (a number or auto)".into()))
        }
        None if !profile.vanishes_at_one() => {
            eprintln!(
                "warning: {} does not vanish at t = 1, no c to estimate; defect column is NaN",
                profile.kind_name()
            );
            None
        }
        None => Some(estimate_c_with(&profile, a.n, &mut ks)?.c),
    };
    let mut rows = Vec::with_capacity(points.len());
    let mut signed = false;
    for &t in &points {
        match c {
            Some(c) => {
                let d = defect_with(&profile, a.n, c, t, &mut ks)?;
                signed = d.signed_density;
                rows.push(vec![t, d.kernel.value, d.value]);
            }
            None => rows.push(vec![t, ks.eval(t)?.value, f64::NAN]),
        }
    }
    let extra = json!({
        "profile": profile.kind_name(),
        "n": a.n,
        "c": c.map_or(Value::Null, json_f64),
        "signed_density": signed,
    });
    emit_table(a.out.as_deref(), a.format, &["t", "F", "defect"], &rows, extra)?;
    Ok(Outcome::Ok)
}

fn cmd_poincare(a: &PoincareArgs) -> Result<Outcome> {
    let sol = solve_poincare(a.c, a.tmin, a.tol)?;
    let rows: Vec<Vec<f64>> = sol
        .grid
        .iter()
        .map(|p| vec![p.t, p.f, p.fp, p.fpp, p.psi_residual])
        .collect();
    let header = ["t", "f", "fp", "fpp", "psi_residual"];
    if let Some(path) = &a.out {
        write_csv(&mut *sink(Some(path))?, &header, &rows).map_err(io_err)?;
    }
    let mut summary = json!({
        "c": a.c,
        "t0": sol.t0.map_or(Value::Null, json_f64),
        "t_min_reached": json_f64(sol.t_min_reached),
        "psi_residual_max": json_f64(sol.psi_residual_max),
        "density_residual_max": json_f64(sol.density_residual_max),
        "grid_points": sol.grid.len(),
        "exponent": Value::Null,
    });
    if sol.t0.is_some() {
        let cusp = cusp_data(&sol)?;
        summary["f_t0"] = json_f64(cusp.f0);
        summary["event_residual"] = json_f64(cusp.event_residual);
        summary["qppp_num"] = json_f64(cusp.qppp_num);
        summary["qppp_formula"] = json_f64(cusp.qppp_formula);
    } else if a.c >= 0.0 && sol.t_min_reached <= 1e-3 {
        let fit = origin_fit(&sol)?;
        summary["exponent"] = json_f64(fit.exponent);
        summary["prefactor"] = json_f64(fit.prefactor);
    }
    if a.c == 0.0 {
        // the c = 0 solution is 2 - 2√t
        let lo = sol.t_lower().max(1e-3);
        let hi = 1.0 - 1e-6;
        let mut sup = 0f64;
        for i in 0..=4000 {
            let t = lo + (hi - lo) * i as f64 / 4000.0;
            sup = sup.max((sol.eval(t)?.f - (2.0 - 2.0 * t.sqrt())).abs());
        }
        summary["sup_error"] = json_f64(sup);
    }
    match a.format {
        Format::Json => emit_json(None, &summary)?,
        Format::Csv => write_csv(&mut *sink(None)?, &header, &rows).map_err(io_err)?,
    }
    Ok(if sol.t0.is_some() {
        Outcome::Terminated
    } else {
        Outcome::Ok
    })
}

/// Exact rational from `p/q`, an integer or a plain decimal.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    let r = Rational::new(num, den);
    Some(if neg { -r } else { r })
}

fn cmd_asymptotics(a: &AsymptoticsArgs) -> Result<Outcome> {
    let doc = match parse_rational(&a.v) {
        Some(v) => {
            let coeffs = phi_v_a_coefficients(&v, a.order)?;
            json!({
                "v": a.v,
                "exact": true,
                "A": coeffs.iter().map(|x| json_f64(crate::series::Coeff::to_f64(x))).collect::<Vec<_>>(),
                "A_exact": coeffs.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })
        }
        None => {
            let v = f64::from_str(a.v.trim())
                .map_err(|_| Error::Config(format!("--v must be a number, got {:?}", a.v)))?;
            let order = a.order as i32 + 2;
            let phi = phi_v_l_series(&v, order);
            let c = moment_expansion(&phi, order + 1)?;
            let inv = reciprocal_moments(&c, a.order as i32)?;
            let coeffs = a_coefficients(&inv);
            json!({
                "v": v,
                "exact": false,
                "A": coeffs[..=a.order].iter().map(|x| json_f64(*x)).collect::<Vec<_>>(),
            })
        }
    };
    emit_json(a.out.as_deref(), &doc)?;
    Ok(Outcome::Ok)
}

fn cmd_lerch(a: &LerchArgs) -> Result<Outcome> {
    let points = a.points.points()?;
    let mut rows = Vec::with_capacity(points.len());
    for &t in &points {
        let ell = -t.ln();
        let direct = lerch_phi_via(t, a.s, a.deriv, LerchPath::Direct)?;
        let boundary = if ell < LERCH_RADIUS {
            lerch_phi_via(t, a.s, a.deriv, LerchPath::Boundary)?
        } else {
            f64::NAN
        };
        rows.push(vec![t, ell, direct, boundary, direct - boundary]);
    }
    let extra = json!({ "s": a.s, "deriv": a.deriv });
    emit_table(
        a.out.as_deref(),
        a.format,
        &["t", "L", "direct", "boundary", "difference"],
        &rows,
        extra,
    )?;
    Ok(Outcome::Ok)
}

fn cmd_profile_eval(a: &ProfileEvalArgs) -> Result<Outcome> {
    let points = a.points.points()?;
    let profile = load_profile(&a.profile)?;
    let mut rows = Vec::with_capacity(points.len());
    for &t in &points {
        let d = profile.eval(t)?;
        let w = monge_ampere_density(&profile, a.n, t)?;
        rows.push(vec![t, d.f, d.fp, d.fpp, w]);
    }
    let extra = json!({ "profile": profile.kind_name(), "n": a.n });
    emit_table(
        a.out.as_deref(),
        a.format,
        &["t", "f", "fp", "fpp", "density"],
        &rows,
        extra,
    )?;
    Ok(Outcome::Ok)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    if let Some(p) = &a.profile {
        load_profile(p)?;
    }
    if let Some(bad) = a.only.iter().find(|o| !verify::TAGS.contains(&o.as_str())) {
        return Err(Error::Config(format!(
            "unknown check {bad:?}; known: {}",
            verify::TAGS.join(", ")
        )));
    }
    let results = verify::run(&a.only);
    let mut out = sink(None)?;
    match a.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&results).map_err(|e| Error::Config(e.to_string()))?;
            writeln!(out, "{text}").map_err(io_err)?;
        }
        Format::Csv => {
            for r in &results {
                writeln!(out, "{}", r.line()).map_err(io_err)?;
            }
            let passed = results.iter().filter(|r| r.passed).count();
            writeln!(out, "{passed}/{} checks passed", results.len()).map_err(io_err)?;
        }
    }
    out.flush().map_err(io_err)?;
    Ok(if results.iter().all(|r| r.passed) {
        Outcome::Ok
    } else {
        Outcome::VerifyFailed
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("9/4"), Some(Rational::new(9.into(), 4.into())));
        assert_eq!(parse_rational("0.5"), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-3"), Some(Rational::from_integer((-3).into())));
        assert_eq!(parse_rational("1e-3"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 1);
        assert_eq!(exit_code(&Error::ConvergenceBudget("x".into())), 2);
    }
}
