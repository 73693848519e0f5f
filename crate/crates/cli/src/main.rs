use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use volterra_core::carleson::{
    carleson_seminorm, default_arcs, log_carleson_ladder, mu_window, ArcSpec, WindowQuadrature,
};
use volterra_core::disc::{make_symbol, registry};
use volterra_core::distances::{
    dist_lvmoa, dist_vmoa, essential_norm_report, DistConfig, Space,
};
use volterra_core::hardy::{
    bmoa_seminorm, equispaced, lmoa_seminorm, mobius_centered_norm, symbol_hp_norm, NormConfig, SeminormGrid,
};
use volterra_core::verify::{run_suite, CHECKS};
use volterra_core::volterra::{
    leibov_build, offarc_tail_integral, tg_apply_poly, tg_boundary_value, LeibovConfig, RadialQuadrature,
    TailConfig,
};
use volterra_core::{format_float, DiscPoint, Error, Symbol, SymbolSpec, TaylorPoly};

const EXIT_COMPUTE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "volterra", version, about = "Norms, seminorms and essential-norm proxies for Volterra operators on the disc")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Common {
    /// Registry name or inline JSON record `{"name": ..., "params": {...}}`.
    #[arg(long, default_value = "identity")]
    symbol: String,
    /// Symbol parameter `key=value`; the value is read as JSON when it parses.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GridArgs {
    #[arg(long, default_value_t = 10)]
    levels: u32,
    #[arg(long, default_value_t = 64)]
    angles: usize,
    /// Baseline boundary nodes per circle.
    #[arg(long, default_value_t = 1 << 14)]
    samples: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeminormKind {
    Bmoa,
    Lmoa,
    Carleson,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightArg {
    None,
    Lambda,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary H^p norm, or the Möbius-centered norm when `--a` is given.
    Norm {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Center `re,im` (or `re`).
        #[arg(long)]
        a: Option<String>,
        #[arg(long, default_value_t = 1 << 14)]
        samples: usize,
    },
    /// BMOA, LMOA or Carleson-form seminorm over a dyadic grid.
    Seminorm {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "bmoa")]
        kind: SeminormKind,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Window energy μ(g, I) for one arc, or the logarithmic Carleson ladder.
    Carleson {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.0)]
        center: f64,
        /// Normalized arc measure |I| in (0, 1].
        #[arg(long)]
        size: Option<f64>,
        /// Emit the ladder over |I| = 2^-1 .. 2^-levels instead of a single window.
        #[arg(long)]
        ladder: bool,
        #[arg(long, default_value_t = 10)]
        levels: u32,
        #[arg(long, default_value_t = 64)]
        angles: usize,
    },
    /// Distance proxy to VMOA (unweighted) or LVMOA (λ-weighted).
    Dist {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, value_enum, default_value = "none")]
        weight: WeightArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Taylor coefficients of T_g f, or its boundary value with `--theta`.
    Apply {
        #[command(flatten)]
        common: Common,
        /// Coefficients of f as a JSON array of numbers or [re, im] pairs.
        #[arg(long)]
        input_coeffs: Option<String>,
        /// f as a symbol (name or inline JSON).
        #[arg(long, conflicts_with = "input_coeffs")]
        input_symbol: Option<String>,
        #[arg(long, default_value_t = 16)]
        degree: usize,
        /// Evaluate T_g f(e^{iθ}) along the radius instead.
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Off-arc tail integral at one center, or over |a| = 1 − 2^-j, j = from..=levels.
    Tail {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: Option<String>,
        #[arg(long, default_value_t = 0.0)]
        angle: f64,
        #[arg(long, default_value_t = 4)]
        from: u32,
        #[arg(long, default_value_t = 10)]
        levels: u32,
    },
    /// Log-kernel sequence over arcs of measure 2^-1 .. 2^-levels.
    Leibov {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        levels: u32,
        #[arg(long, default_value_t = 0.0)]
        center: f64,
    },
    /// Essential-norm proxy report for T_g on H^p, BMOA or VMOA.
    Report {
        #[command(flatten)]
        common: Common,
        /// `H^p` (e.g. H^2), `BMOA` or `VMOA`.
        #[arg(long, default_value = "H^2")]
        space: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run named verification checks.
    Verify {
        /// `all` or a comma-separated list of check names; may repeat.
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
        /// Time budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure classes with their exit statuses.
enum Failure {
    Usage(String),
    Compute(Error),
    Budget(Document),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A rendered output document.
struct Document {
    text: String,
    out: Option<PathBuf>,
}

fn json_doc<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Document {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    Document { text, out: out.clone() }
}

fn csv_doc(text: String, out: &Option<PathBuf>) -> Document {
    Document { text, out: out.clone() }
}

fn emit(doc: &Document) -> std::io::Result<()> {
    match &doc.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(doc.text.as_bytes())?;
            stdout.flush()
        }
        Some(path) => write_atomic(path, doc.text.as_bytes()),
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn usage_error(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_param(text: &str) -> Outcome<(String, Value)> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| usage(format!("--param expects key=value, got '{text}'")))?;
    let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
    Ok((k.trim().to_string(), value))
}

fn build_symbol(text: &str, params: &[String]) -> Outcome<Symbol> {
    let mut extra = serde_json::Map::new();
    for p in params {
        let (k, v) = parse_param(p)?;
        extra.insert(k, v);
    }
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let mut record: Value = serde_json::from_str(trimmed).map_err(|e| usage(format!("symbol record: {e}")))?;
        if !extra.is_empty() {
            let obj = record.as_object_mut().ok_or_else(|| usage("symbol record must be an object"))?;
            let params = obj.entry("params").or_insert_with(|| json!({}));
            if params.is_null() {
                *params = json!({});
            }
            let map = params.as_object_mut().ok_or_else(|| usage("params must be an object"))?;
            map.extend(extra);
        }
        return SymbolSpec::parse(&record.to_string()).map_err(usage_error);
    }
    if extra.is_empty() {
        if let Some((_, g)) = registry().into_iter().find(|(n, _)| *n == trimmed) {
            return Ok(g);
        }
    }
    make_symbol(trimmed, &Value::Object(extra)).map_err(usage_error)
}

fn parse_point(text: &str) -> Outcome<DiscPoint> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| usage(format!("bad coordinate '{s}' in '{text}'")));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(usage(format!("a point is `re,im`, got '{text}'"))),
    };
    DiscPoint::new(z).map_err(usage_error)
}

fn parse_coeffs(text: &str) -> Outcome<TaylorPoly> {
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("--input-coeffs: {e}")))?;
    let symbol = make_symbol("polynomial", &json!({ "coeffs": v })).map_err(usage_error)?;
    match symbol {
        Symbol::Polynomial(p) => Ok(p),
        _ => unreachable!("polynomial builder returns a polynomial"),
    }
}

fn check_p(p: f64) -> Outcome<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--p must be positive, got {p}")))
    }
}

fn check_samples(n: usize) -> Outcome<()> {
    if n.is_power_of_two() {
        Ok(())
    } else {
        Err(usage(format!("--samples must be a power of two, got {n}")))
    }
}

fn check_grid(g: &GridArgs) -> Outcome<()> {
    check_samples(g.samples)?;
    if g.levels < 3 {
        return Err(usage("--levels must be at least 3"));
    }
    if g.angles == 0 {
        return Err(usage("--angles must be positive"));
    }
    Ok(())
}

fn norm_config(samples: usize) -> NormConfig {
    NormConfig::with_samples(samples)
}

/// Coefficients as `[[re, im], ...]`.
fn coeff_json(p: &TaylorPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| json!([c.re, c.im])).collect())
}

fn simple_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|&x| format_float(x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn norm_result_csv(v: &Value) -> String {
    let arg = &v["argmax"];
    let (r, t) = if arg.is_null() {
        (String::new(), String::new())
    } else {
        (format_float(arg["r"].as_f64().unwrap_or(f64::NAN)), format_float(arg["theta"].as_f64().unwrap_or(f64::NAN)))
    };
    format!(
        "value,degree_used,samples_used,resolved,argmax_r,argmax_theta\n{},{},{},{},{},{}\n",
        format_float(v["value"].as_f64().unwrap_or(f64::NAN)),
        v["degree_used"],
        v["samples_used"],
        v["resolved"],
        r,
        t
    )
}

fn run(cli: Cli) -> Outcome<Document> {
    match cli.command {
        Command::Norm { common, p, a, samples } => {
            check_p(p)?;
            check_samples(samples)?;
            let g = build_symbol(&common.symbol, &common.params)?;
            let a = a.as_deref().map(parse_point).transpose()?;
            let cfg = norm_config(samples);
            let result = match a {
                Some(a) => mobius_centered_norm(&g, a, p, &cfg)?,
                None => symbol_hp_norm(&g, p, &cfg)?,
            };
            let v = serde_json::to_value(&result).expect("serializable");
            Ok(match common.format {
                Format::Json => json_doc(&v, &common.out),
                Format::Csv => csv_doc(norm_result_csv(&v), &common.out),
            })
        }
        Command::Seminorm { common, kind, p, grid } => {
            check_p(p)?;
            check_grid(&grid)?;
            let g = build_symbol(&common.symbol, &common.params)?;
            let cfg = norm_config(grid.samples);
            let v = match kind {
                SeminormKind::Bmoa | SeminormKind::Lmoa => {
                    let mut radii = vec![0.0];
                    radii.extend((1..=grid.levels).map(|j| 1.0 - 0.5f64.powi(j as i32)));
                    let sg = SeminormGrid::new(radii, equispaced(grid.angles), cfg)
                        .map_err(usage_error)?
                        .with_singular_angles(&g);
                    if kind == SeminormKind::Bmoa {
                        serde_json::to_value(bmoa_seminorm(&g, &sg, p)?).expect("serializable")
                    } else {
                        let l = lmoa_seminorm(&g, &sg)?;
                        let mut v = serde_json::to_value(&l.norm).expect("serializable");
                        v["diverging"] = json!(l.diverging);
                        v
                    }
                }
                SeminormKind::Carleson => {
                    let arcs = default_arcs(&g, grid.levels, grid.angles);
                    let s = carleson_seminorm(&g, &arcs, &WindowQuadrature::default())?;
                    let mut v = serde_json::to_value(&s.norm).expect("serializable");
                    v["arc"] = serde_json::to_value(s.arc).expect("serializable");
                    v
                }
            };
            Ok(match common.format {
                Format::Json => json_doc(&v, &common.out),
                Format::Csv => csv_doc(norm_result_csv(&v), &common.out),
            })
        }
        Command::Carleson { common, center, size, ladder, levels, angles } => {
            let g = build_symbol(&common.symbol, &common.params)?;
            let quad = WindowQuadrature::default();
            if ladder {
                if levels == 0 || angles == 0 {
                    return Err(usage("--levels and --angles must be positive"));
                }
                let sizes: Vec<f64> = (1..=levels).map(|j| 0.5f64.powi(j as i32)).collect();
                let l = log_carleson_ladder(&g, &sizes, &equispaced(angles), &quad)?;
                return Ok(match common.format {
                    Format::Json => json_doc(&l, &common.out),
                    Format::Csv => csv_doc(l.to_csv()?, &common.out),
                });
            }
            let size = size.ok_or_else(|| usage("--size is required unless --ladder is given"))?;
            let arc = ArcSpec::new(center, size).map_err(usage_error)?;
            let mu = mu_window(&g, arc, &quad)?;
            let v = json!({ "center_angle": arc.center_angle, "measure": arc.measure, "mu": mu, "ratio": mu / arc.measure });
            Ok(match common.format {
                Format::Json => json_doc(&v, &common.out),
                Format::Csv => csv_doc(
                    simple_csv(&["center_angle", "measure", "mu", "ratio"], &[vec![arc.center_angle, arc.measure, mu, mu / arc.measure]]),
                    &common.out,
                ),
            })
        }
        Command::Dist { common, p, weight, grid } => {
            check_p(p)?;
            check_grid(&grid)?;
            let g = build_symbol(&common.symbol, &common.params)?;
            let cfg = DistConfig { levels: grid.levels, angles: grid.angles, norm: norm_config(grid.samples), ..Default::default() };
            match weight {
                WeightArg::None => {
                    let d = dist_vmoa(&g, p, &cfg)?;
                    Ok(match common.format {
                        Format::Json => json_doc(&d, &common.out),
                        Format::Csv => csv_doc(d.ladder.to_csv()?, &common.out),
                    })
                }
                WeightArg::Lambda => {
                    let d = dist_lvmoa(&g, &cfg)?;
                    Ok(match common.format {
                        Format::Json => json_doc(&d, &common.out),
                        Format::Csv => csv_doc(d.ladder.to_csv()?, &common.out),
                    })
                }
            }
        }
        Command::Apply { common, input_coeffs, input_symbol, degree, theta } => {
            let g = build_symbol(&common.symbol, &common.params)?;
            let f = match (&input_coeffs, &input_symbol) {
                (Some(c), None) => Symbol::Polynomial(parse_coeffs(c)?),
                (None, Some(s)) => build_symbol(s, &[])?,
                (None, None) => Symbol::constant(Complex64::new(1.0, 0.0)),
                (Some(_), Some(_)) => return Err(usage("give only one of --input-coeffs and --input-symbol")),
            };
            if let Some(t) = theta {
                let ray = tg_boundary_value(&g, &f, t, &RadialQuadrature::default())?;
                let v = json!({ "theta": t, "re": ray.re, "im": ray.im, "converged": ray.converged, "cells": ray.cells });
                return Ok(match common.format {
                    Format::Json => json_doc(&v, &common.out),
                    Format::Csv => csv_doc(
                        format!("theta,re,im,converged\n{},{},{},{}\n", format_float(t), format_float(ray.re), format_float(ray.im), ray.converged),
                        &common.out,
                    ),
                });
            }
            let t = tg_apply_poly(&g.taylor(degree), &f.taylor(degree), degree);
            Ok(match common.format {
                Format::Json => json_doc(&json!({ "degree": degree, "coeffs": coeff_json(&t) }), &common.out),
                Format::Csv => {
                    let mut s = String::from("k,re,im\n");
                    for (k, c) in t.coeffs().iter().enumerate() {
                        s.push_str(&format!("{k},{},{}\n", format_float(c.re), format_float(c.im)));
                    }
                    csv_doc(s, &common.out)
                }
            })
        }
        Command::Tail { common, a, angle, from, levels } => {
            let g = build_symbol(&common.symbol, &common.params)?;
            let cfg = TailConfig::default();
            let points: Vec<DiscPoint> = match a {
                Some(text) => vec![parse_point(&text)?],
                None => {
                    if from == 0 || from > levels {
                        return Err(usage("need 1 <= --from <= --levels"));
                    }
                    (from..=levels)
                        .map(|j| DiscPoint::polar(1.0 - 0.5f64.powi(j as i32), angle).map_err(usage_error))
                        .collect::<Outcome<_>>()?
                }
            };
            if points.iter().any(|p| p.modulus() == 0.0) {
                return Err(usage("the tail integral needs a nonzero center"));
            }
            let mut rows = Vec::new();
            for p in &points {
                let t = offarc_tail_integral(&g, *p, &cfg)?;
                rows.push(json!({
                    "r": p.modulus(),
                    "theta": p.arg(),
                    "half_width": t.half_width,
                    "value": t.value,
                    "converged": t.converged,
                }));
            }
            Ok(match common.format {
                Format::Json => json_doc(&json!({ "rungs": rows }), &common.out),
                Format::Csv => {
                    let mut s = String::from("r,theta,half_width,value,converged\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            format_float(r["r"].as_f64().unwrap()),
                            format_float(r["theta"].as_f64().unwrap()),
                            format_float(r["half_width"].as_f64().unwrap()),
                            format_float(r["value"].as_f64().unwrap()),
                            r["converged"]
                        ));
                    }
                    csv_doc(s, &common.out)
                }
            })
        }
        Command::Leibov { common, levels, center } => {
            if !(2..=20).contains(&levels) {
                return Err(usage("--levels must lie in 2..=20"));
            }
            let sizes: Vec<f64> = (1..=levels).map(|j| 0.5f64.powi(j as i32)).collect();
            let seq = leibov_build(&sizes, &[center], &LeibovConfig::default())?;
            Ok(match common.format {
                Format::Json => json_doc(&json!({ "diagnostics": seq.diagnostics }), &common.out),
                Format::Csv => csv_doc(seq.to_csv()?, &common.out),
            })
        }
        Command::Report { common, space, grid } => {
            check_grid(&grid)?;
            let g = build_symbol(&common.symbol, &common.params)?;
            let space = Space::parse(&space).map_err(usage_error)?;
            let cfg = DistConfig { levels: grid.levels, angles: grid.angles, norm: norm_config(grid.samples), ..Default::default() };
            let rep = essential_norm_report(&g, space, &cfg)?;
            Ok(match common.format {
                Format::Json => json_doc(&rep, &common.out),
                Format::Csv => {
                    let rows: Vec<Vec<f64>> = rep.ladder.iter().map(|r| vec![r.level, r.value, r.angle]).collect();
                    csv_doc(simple_csv(&["level", "value", "angle"], &rows), &common.out)
                }
            })
        }
        Command::Verify { suite, budget, format, out } => {
            let mut names: Vec<String> = Vec::new();
            for entry in &suite {
                for name in entry.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    if name == "all" {
                        names.extend(CHECKS.iter().map(|s| s.to_string()));
                    } else if CHECKS.contains(&name) {
                        names.push(name.to_string());
                    } else {
                        return Err(usage(format!("unknown check '{name}'; known: all, {}", CHECKS.join(", "))));
                    }
                }
            }
            let budget = match budget {
                Some(b) if b.is_finite() && b >= 0.0 => Some(Duration::from_secs_f64(b)),
                Some(b) => return Err(usage(format!("--budget must be a non-negative number of seconds, got {b}"))),
                None => None,
            };
            let report = run_suite(&names, budget)?;
            let doc = match format {
                Format::Json => json_doc(&report, &out),
                Format::Csv => {
                    let mut s = String::from("name,passed,measured,tolerance\n");
                    for c in &report.checks {
                        s.push_str(&format!("{},{},{},{}\n", c.name, c.passed, format_float(c.measured), format_float(c.tolerance)));
                    }
                    csv_doc(s, &out)
                }
            };
            if !report.complete {
                return Err(Failure::Budget(doc));
            }
            if !report.passed {
                emit(&doc).map_err(|e| Failure::Compute(Error::InvalidParameter(e.to_string())))?;
                return Err(Failure::Compute(Error::Unresolved("one or more checks failed".into())));
            }
            Ok(doc)
        }
    }
}

fn error_record(kind: &str, detail: &str) {
    eprintln!("{}", json!({ "error": kind, "detail": detail }));
}

fn configure_threads() -> Outcome<()> {
    if let Ok(v) = std::env::var("VOLTERRA_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| usage(format!("VOLTERRA_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            error_record("usage", &e.to_string());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = configure_threads().and_then(|_| run(cli));
    match result {
        Ok(doc) => match emit(&doc) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                error_record("io", &e.to_string());
                ExitCode::from(EXIT_COMPUTE)
            }
        },
        Err(Failure::Usage(msg)) => {
            error_record("usage", &msg);
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Compute(e)) => {
            error_record(e.kind(), &e.to_string());
            ExitCode::from(EXIT_COMPUTE)
        }
        Err(Failure::Budget(doc)) => {
            let _ = emit(&doc);
            error_record("budget-exceeded", "time budget exhausted before all checks ran");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
