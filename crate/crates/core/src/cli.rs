//! Command-line front end. Data goes to the file named by `--out`; stdout
//! only carries a short summary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use crate::error::Error;
use crate::kippenhahn::{factor_probe, kipp_coeffs};
use crate::linalg::ComplexMatrix;
use crate::models::{kms, KmsParams};
use crate::numrange::{boundary_sample, numerical_radius_with_direction, BoundarySample, DEFAULT_GRID};
use crate::verify::{report_json, run_suite, summarize, SuiteConfig, CHECK_IDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kmsrange", version, about = "Numerical ranges of KMS matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample boundary points of W(J_n(a)) into a CSV file.
    Boundary(MatrixArgs),
    /// Write the Kippenhahn polynomial coefficients as JSON.
    Kipp(MatrixArgs),
    /// Write the numerical radius as JSON.
    Radius(MatrixArgs),
    /// Run the verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Draw the boundary of W(J_n(a)) as an SVG file.
    Plot(MatrixArgs),
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Matrix size.
    #[arg(long)]
    pub n: usize,
    /// KMS parameter, e.g. `0.5`, `2i`, `1.5+2i`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
    /// Number of boundary directions.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub samples: usize,
    /// Output file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Single matrix size instead of the default range.
    #[arg(long, conflicts_with = "n_max")]
    pub n: Option<usize>,
    /// Run sizes 1..=N.
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    /// Single parameter instead of the default set.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Option<Complex64>,
    /// Comma-separated check ids, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Seed for randomised checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of directions in grid scans.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Record per-check wall-clock time (makes the report non-reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Output file.
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `x`, `yi`, `x+yi` or `x-yi`; a bare `i` means one.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("cannot parse complex number '{s}' (expected e.g. 1.5+2i)");
    let num = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(bad());
    }
    let z = if let Some(body) = s.strip_suffix('i') {
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        match split {
            Some(k) => Complex64::new(body[..k].parse::<f64>().map_err(|_| bad())?, num(&body[k..])?),
            None => Complex64::new(0.0, num(body)?),
        }
    } else {
        Complex64::new(s.parse::<f64>().map_err(|_| bad())?, 0.0)
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// Formats with 12 significant digits: fixed notation for magnitudes in
/// `[1e-5, 1e12)`, scientific otherwise. Negative zero prints as zero.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let ax = x.abs();
    let s = if (1e-5..1e12).contains(&ax) {
        let decimals = (11 - ax.log10().floor() as i32).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    };
    if s.starts_with('-') && s[1..].parse::<f64>() == Ok(0.0) {
        s[1..].to_string()
    } else {
        s
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn matrix_from(args: &MatrixArgs, min_samples: usize) -> Result<ComplexMatrix, Failure> {
    if args.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    if args.samples < min_samples {
        return Err(Failure::Usage(format!("--samples must be at least {min_samples}")));
    }
    Ok(kms(KmsParams::new(args.n, args.a)?))
}

/// CSV with header `theta,support,re,im,multiplicity`.
pub fn boundary_csv(samples: &[BoundarySample]) -> String {
    let mut out = String::from("theta,support,re,im,multiplicity\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_sig(s.theta),
            fmt_sig(s.support),
            fmt_sig(s.point.re),
            fmt_sig(s.point.im),
            s.multiplicity
        );
    }
    out
}

/// Standalone SVG of the closed boundary polygon with coordinate axes.
pub fn boundary_svg(points: &[Complex64]) -> String {
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in points {
        lo_x = lo_x.min(p.re);
        hi_x = hi_x.max(p.re);
        lo_y = lo_y.min(-p.im);
        hi_y = hi_y.max(-p.im);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y);
    let span = if span > 0.0 { span } else { 1.0 };
    let pad = 0.1 * span;
    let (x0, y0) = (lo_x - pad, lo_y - pad);
    let (w, h) = (hi_x - lo_x + 2.0 * pad, hi_y - lo_y + 2.0 * pad);
    let stroke = fmt_sig(span / 200.0);
    let mut path = String::new();
    for p in points.iter().chain(points.first()) {
        let _ = write!(path, "{},{} ", fmt_sig(p.re), fmt_sig(-p.im));
    }
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="{}">"#,
        fmt_sig(x0),
        fmt_sig(y0),
        fmt_sig(w),
        fmt_sig(h),
        (600.0 * h / w).round()
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{}" y1="0" x2="{}" y2="0" stroke="#888888" stroke-width="{stroke}"/>"##,
        fmt_sig(x0),
        fmt_sig(x0 + w)
    );
    let _ = writeln!(
        svg,
        r##"<line x1="0" y1="{}" x2="0" y2="{}" stroke="#888888" stroke-width="{stroke}"/>"##,
        fmt_sig(y0),
        fmt_sig(y0 + h)
    );
    let _ = writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#1f4e9a" stroke-width="{stroke}"/>"##,
        path.trim_end()
    );
    svg.push_str("</svg>\n");
    svg
}

fn cmd_boundary(args: &MatrixArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let a = matrix_from(args, 3)?;
    let samples = boundary_sample(&a, args.samples)?;
    write_file(&args.out, &boundary_csv(&samples))?;
    let _ = writeln!(out, "wrote {} boundary samples to {}", samples.len(), args.out.display());
    Ok(EXIT_OK)
}

fn cmd_plot(args: &MatrixArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let a = matrix_from(args, 3)?;
    let points: Vec<Complex64> = boundary_sample(&a, args.samples)?.iter().map(|s| s.point).collect();
    write_file(&args.out, &boundary_svg(&points))?;
    let _ = writeln!(out, "wrote boundary plot ({} points) to {}", points.len(), args.out.display());
    Ok(EXIT_OK)
}

fn cmd_kipp(args: &MatrixArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let a = matrix_from(args, 6)?;
    let p = kipp_coeffs(&a)?;
    let report = factor_probe(&p, &boundary_sample(&a, args.samples)?)?;
    let n = p.degree();
    let coefficients: Vec<_> = (0..=n)
        .flat_map(|d| (0..=d).map(move |k| (d - k, k)))
        .map(|(j, k)| json!({ "j": j, "k": k, "c": p.coeff(j, k) + 0.0 }))
        .collect();
    let linear: Vec<_> = report
        .linear_factors()
        .iter()
        .map(|f| json!({ "polynomial_x": f.polynomial.coeff(1, 0), "polynomial_y": f.polynomial.coeff(0, 1), "remainder_norm": f.remainder_norm }))
        .collect();
    let doc = json!({
        "n": args.n,
        "a": { "re": args.a.re, "im": args.a.im },
        "degree": n,
        "coefficients": coefficients,
        "factor_probe": {
            "factor_tol": report.factor_tol,
            "linear_factors": linear,
            "quadratic_factor": report.quadratic_factor().is_some(),
            "best_quadratic_remainder": report.quadratic.as_ref().map(|q| q.remainder_norm),
        },
    });
    write_file(&args.out, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
    let verdict = if report.has_factor() { "factor detected" } else { "no real linear/quadratic factor detected" };
    let _ = writeln!(out, "wrote {} coefficients to {} ({verdict})", coefficients.len(), args.out.display());
    Ok(EXIT_OK)
}

fn cmd_radius(args: &MatrixArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let a = matrix_from(args, 3)?;
    let (w, theta) = numerical_radius_with_direction(&a)?;
    let doc = json!({
        "n": args.n,
        "a": { "re": args.a.re, "im": args.a.im },
        "numerical_radius": w,
        "direction_theta": theta,
    });
    write_file(&args.out, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
    let _ = writeln!(out, "w(J_{}({})) = {}", args.n, args.a, fmt_sig(w));
    Ok(EXIT_OK)
}

fn suite_config(args: &VerifyArgs) -> Result<SuiteConfig, Failure> {
    let mut cfg = SuiteConfig { seed: args.seed, timing: args.timing, ..SuiteConfig::default() };
    if let Some(n) = args.n {
        cfg.n_values = vec![n];
    }
    if let Some(k) = args.n_max {
        cfg.n_values = (1..=k).collect();
    }
    if let Some(a) = args.a {
        cfg.a_values = vec![a];
    }
    if let Some(m) = args.samples {
        cfg.grid_m = m;
    }
    if args.suite != "all" {
        let ids: Vec<String> = args.suite.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        if let Some(bad) = ids.iter().find(|id| !CHECK_IDS.contains(&id.as_str())) {
            return Err(Failure::Usage(format!("unknown check '{bad}'; known: {}", CHECK_IDS.join(", "))));
        }
        cfg.checks = Some(ids);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = suite_config(args)?;
    let results = run_suite(&cfg);
    let doc = report_json(&cfg, &results);
    write_file(&args.out, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
    let (pass, fail, skip) = summarize(&results);
    for r in results.iter().filter(|r| r.failed()) {
        let _ = writeln!(out, "FAIL {} {}", r.id, serde_json::to_string(&r.params).unwrap_or_default());
    }
    let _ = writeln!(out, "{pass} passed, {fail} failed, {skip} skipped; report at {}", args.out.display());
    Ok(if fail == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Parses `args` (including the program name) and runs the command,
/// writing the summary to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Boundary(a) => cmd_boundary(a, out),
        Command::Kipp(a) => cmd_kipp(a, out),
        Command::Radius(a) => cmd_radius(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Plot(a) => cmd_plot(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
    }
}
