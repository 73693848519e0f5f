//! Named numerical checks shared by the acceptance tests and `volterra verify`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use crate::carleson::{carleson_seminorm, default_arcs, mu_window_quadrature, ArcSpec, WindowQuadrature};
use crate::disc::{psi_eval, registry, CircleSamples, DiscPoint, Symbol, TaylorPoly};
use crate::distances::{dist_lvmoa, essential_norm_report, radial_ladder, Classification, DistConfig, Space, Weight};
use crate::error::{invalid, Result};
use crate::hardy::{
    bmoa_seminorm, boundary_hp_norm, h2_series_norm, lambda_of_modulus, mobius_centered_norm,
    mobius_centered_norm_quadrature, subordination_gap, symbol_hp_norm, NormConfig, SeminormGrid,
};
use crate::volterra::{leibov_build, offarc_tail_integral, LeibovConfig, TailConfig};

pub const CHECKS: [&str; 12] = [
    "psi-identity",
    "testfn-normalization",
    "parseval",
    "identity-closed-forms",
    "cesaro-ladder",
    "subordination",
    "lambda-monotonicity",
    "offarc-decay",
    "carleson-bracket",
    "leibov",
    "reverse-holder",
    "classification",
];

const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, measured: f64, tolerance: f64, detail: String) -> Self {
        CheckOutcome { name: name.to_string(), passed, measured, tolerance, detail, seconds: 0.0 }
    }

    fn at_most(name: &str, measured: f64, tolerance: f64, detail: String) -> Self {
        Self::new(name, measured <= tolerance, measured, tolerance, detail)
    }
}

/// Runs one check by name. Numerical failures are reported in the outcome.
pub fn run_check(name: &str) -> Result<CheckOutcome> {
    let start = Instant::now();
    let result = match name {
        "psi-identity" => psi_identity(),
        "testfn-normalization" => testfn_normalization(),
        "parseval" => parseval(),
        "identity-closed-forms" => identity_closed_forms(),
        "cesaro-ladder" => cesaro_ladder(),
        "subordination" => subordination(),
        "lambda-monotonicity" => lambda_monotonicity(),
        "offarc-decay" => offarc_decay(),
        "carleson-bracket" => carleson_bracket(),
        "leibov" => leibov(),
        "reverse-holder" => reverse_holder(),
        "classification" => classification(),
        other => return Err(invalid(format!("unknown check '{other}'"))),
    };
    let mut out = result.unwrap_or_else(|e| CheckOutcome::new(name, false, f64::NAN, f64::NAN, e.to_string()));
    out.seconds = start.elapsed().as_secs_f64();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
    pub complete: bool,
    pub passed: bool,
    pub skipped: Vec<String>,
}

/// Runs the named checks in order. Once `budget` is spent the remaining checks
/// are listed as skipped and the report is marked incomplete.
pub fn run_suite(names: &[String], budget: Option<Duration>) -> Result<SuiteReport> {
    for n in names {
        if !CHECKS.contains(&n.as_str()) {
            return Err(invalid(format!("unknown check '{n}'")));
        }
    }
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for n in names {
        if budget.is_some_and(|b| start.elapsed() >= b) {
            skipped.push(n.clone());
            continue;
        }
        checks.push(run_check(n)?);
    }
    let complete = skipped.is_empty() && budget.is_none_or(|b| start.elapsed() <= b);
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport { checks, complete, passed, skipped })
}

fn tenths() -> impl Iterator<Item = f64> {
    (1..=9).map(|i| i as f64 / 10.0)
}

fn psi_identity() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for r in tenths() {
        for (i, s) in tenths().enumerate() {
            let a = DiscPoint::polar(s, 0.7 * i as f64)?;
            let samples = CircleSamples::sample(|z| psi_eval(r, a, z).expect("valid r"), 1.0, 1024, 0.0)?;
            let got = boundary_hp_norm(&samples, 2.0)?.powi(2);
            let expect = r * r * (1.0 - s * s) / (1.0 - r.powi(4) * s * s);
            worst = worst.max(((got - expect) / expect).abs());
        }
    }
    Ok(CheckOutcome::at_most("psi-identity", worst, 1e-10, "max relative error over 81 (r, |a|) pairs".into()))
}

fn testfn_normalization() -> Result<CheckOutcome> {
    let moduli = [0.0, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.99];
    let cfg = NormConfig::with_samples(1024);
    let mut worst: f64 = 0.0;
    for p in [1.0, 2.0, 4.0] {
        for &m in &moduli {
            for k in 0..3 {
                let a = DiscPoint::polar(m, 2.1 * k as f64 + 0.3)?;
                let v = symbol_hp_norm(&Symbol::hp_test(a, p)?, p, &cfg)?.value;
                worst = worst.max((v - 1.0).abs());
            }
        }
    }
    Ok(CheckOutcome::at_most("testfn-normalization", worst, 1e-6, "max |‖f_a‖ − 1| over p ∈ {1,2,4}, 24 points".into()))
}

fn parseval() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let deg = rng.gen_range(0..=256);
        let coeffs: Vec<Complex64> = (0..=deg)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let p = TaylorPoly::new(coeffs)?;
        let s = CircleSamples::sample(|z| p.eval(z), 1.0, 1024, 0.0)?;
        worst = worst.max((h2_series_norm(&p) - boundary_hp_norm(&s, 2.0)?).abs());
    }
    Ok(CheckOutcome::at_most("parseval", worst, 1e-12, "max |series − boundary| over 100 random polynomials".into()))
}

fn identity_closed_forms() -> Result<CheckOutcome> {
    let cfg = NormConfig::with_samples(1024);
    let mut worst: f64 = 0.0;
    for s in [0.0, 0.3, 0.6, 0.9, 0.99, 0.999] {
        let a = DiscPoint::polar(s, 1.3)?;
        let expect = (1.0 - s * s).sqrt();
        for v in [
            mobius_centered_norm(&Symbol::Identity, a, 2.0, &cfg)?.value,
            mobius_centered_norm_quadrature(&Symbol::Identity, a, 2.0, &cfg)?.value,
        ] {
            worst = worst.max((v - expect).abs());
        }
    }
    let mu = mu_window_quadrature(&Symbol::Identity, ArcSpec::new(0.0, 0.5)?, &WindowQuadrature::default())?;
    let mu_err = (mu - 0.140625).abs();
    let passed = worst < 1e-10 && mu_err < 1e-6;
    Ok(CheckOutcome::new(
        "identity-closed-forms",
        passed,
        worst.max(mu_err),
        1e-10,
        format!("centered-norm error {worst:.3e} (tol 1e-10), window error {mu_err:.3e} (tol 1e-6)"),
    ))
}

fn cesaro_ladder() -> Result<CheckOutcome> {
    let l = radial_ladder(&Symbol::Cesaro, 2.0, 10, 64, Weight::None, &NormConfig::default())?;
    let last = l.rungs.last().expect("nonempty ladder");
    let limit = PI / 2f64.sqrt();
    let rel = (last.value - limit).abs() / limit;
    Ok(CheckOutcome::new(
        "cesaro-ladder",
        rel < 0.05 && last.angle == 0.0,
        rel,
        0.05,
        format!("rung at |a| = 1 − 2^-10 is {:.6} at angle {}", last.value, last.angle),
    ))
}

fn subordination() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let symbols: Vec<Symbol> = registry().into_iter().map(|(_, g)| g).collect();
    let cfg = NormConfig::with_samples(2048);
    let draws: Vec<(usize, f64, f64, f64, f64)> = (0..1000)
        .map(|_| {
            (
                rng.gen_range(0..symbols.len()),
                rng.gen_range(0.05..=1.0),
                rng.gen_range(0.0..0.95),
                rng.gen_range(0.0..2.0 * PI),
                [0.5, 1.0, 2.0, 3.0, 4.0][rng.gen_range(0..5)],
            )
        })
        .collect();
    use rayon::prelude::*;
    let gaps = draws
        .par_iter()
        .map(|&(i, r, s, t, p)| subordination_gap(&symbols[i], r, DiscPoint::polar(s, t)?, p, &cfg))
        .collect::<Result<Vec<f64>>>()?;
    let worst = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(CheckOutcome::new("subordination", worst >= -1e-9, worst, -1e-9, "min gap over 1000 draws".into()))
}

fn lambda_monotonicity() -> Result<CheckOutcome> {
    let n = 1000;
    let (lo, hi) = (0.9, 1.0 - 1e-6);
    let vals = (0..n)
        .map(|i| {
            let s = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            Ok(lambda_of_modulus(s)? * ((1.0 - s) * (1.0 + s)).sqrt())
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = vals.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    Ok(CheckOutcome::at_most("lambda-monotonicity", worst, 0.0, "largest forward difference on [0.9, 1 − 1e-6]".into()))
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn offarc_decay() -> Result<CheckOutcome> {
    let cfg = TailConfig::default();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut values = Vec::new();
    for j in 4..=10 {
        let s = 1.0 - 0.5f64.powi(j);
        let t = offarc_tail_integral(&Symbol::Cesaro, DiscPoint::polar(s, 0.0)?, &cfg)?;
        xs.push((1.0 - s).ln());
        ys.push(t.value.ln());
        values.push(t.value);
    }
    let slope = ls_slope(&xs, &ys);
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    Ok(CheckOutcome::new(
        "offarc-decay",
        decreasing && slope >= 0.45,
        slope,
        0.45,
        format!("log-log slope {slope:.4}, decreasing: {decreasing}"),
    ))
}

/// The LMOA∖LVMOA candidate `Σ k^{−3/2} z^{2^k}`.
pub fn lacunary_candidate() -> Symbol {
    Symbol::lacunary(2, 1.5, 24).expect("valid lacunary parameters")
}

fn carleson_bracket() -> Result<CheckOutcome> {
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    let mut detail = Vec::new();
    let quad = WindowQuadrature::default();
    for (name, g) in registry() {
        let grid = SeminormGrid::dyadic(10, 64)?.with_singular_angles(&g);
        let b = bmoa_seminorm(&g, &grid, 2.0)?.value;
        let c = carleson_seminorm(&g, &default_arcs(&g, 10, 64), &quad)?.norm.value;
        let r = c / b;
        lo = lo.min(r);
        hi = hi.max(r);
        detail.push(format!("{name}: {r:.4}"));
    }
    let est = dist_lvmoa(&lacunary_candidate(), &DistConfig::default())?;
    let r = est.cross_check.ratio;
    detail.push(format!("lacunary λ-ladder/√α̂: {r:.4} (proxy {:.4})", est.proxy));
    lo = lo.min(r);
    hi = hi.max(r);
    let worst = hi.max(1.0 / lo);
    Ok(CheckOutcome::at_most("carleson-bracket", worst, 10.0, detail.join("; ")))
}

fn leibov() -> Result<CheckOutcome> {
    let sizes: Vec<f64> = (1..=13).map(|n| 0.5f64.powi(n)).collect();
    let seq = leibov_build(&sizes, &[0.0], &LeibovConfig::default())?;
    let d = &seq.diagnostics;
    let mut gap: f64 = 0.0;
    for row in d.iter().filter(|r| r.n <= 10) {
        let q = row.h2_norm_quad.ok_or_else(|| invalid("missing truncated-series norm"))?;
        gap = gap.max((q - row.h2_norm_series).abs());
    }
    let decreasing = d.windows(2).all(|w| w[1].h2_norm_series < w[0].h2_norm_series);
    let c_min = d
        .iter()
        .filter(|r| (2..=12).contains(&r.n))
        .map(|r| r.empirical_c)
        .fold(f64::INFINITY, f64::min);
    let passed = gap < 1e-8 && decreasing && c_min >= 0.1;
    Ok(CheckOutcome::new(
        "leibov",
        passed,
        gap,
        1e-8,
        format!("series/truncated gap {gap:.3e}, decreasing: {decreasing}, min window constant {c_min:.4}"),
    ))
}

fn reverse_holder() -> Result<CheckOutcome> {
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    let cfg = NormConfig::with_samples(2048);
    for (_, g) in registry() {
        if g.sparse().is_some_and(|t| t.iter().all(|(n, _)| *n == 0)) {
            continue;
        }
        let grid = SeminormGrid::dyadic(10, 16)?.with_singular_angles(&g).with_config(cfg);
        let two = bmoa_seminorm(&g, &grid, 2.0)?.value;
        for p in [0.5, 1.0, 4.0] {
            let r = bmoa_seminorm(&g, &grid, p)?.value / two;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    Ok(CheckOutcome::at_most(
        "reverse-holder",
        hi.max(1.0 / lo),
        10.0,
        format!("p-seminorm / 2-seminorm ratios in [{lo:.4}, {hi:.4}]"),
    ))
}

fn classification() -> Result<CheckOutcome> {
    let base = DistConfig { angles: 16, ..Default::default() };
    let identity = essential_norm_report(&Symbol::Identity, Space::Hp(2.0), &DistConfig { levels: 20, ..base })?;
    let ces_h1 = essential_norm_report(&Symbol::Cesaro, Space::Hp(1.0), &base)?;
    let ces_bmoa = essential_norm_report(&Symbol::Cesaro, Space::Bmoa, &base)?;
    let poly = Symbol::Polynomial(TaylorPoly::from_real(&[1.0, 1.0, 0.3]));
    let poly_bmoa = essential_norm_report(&poly, Space::Bmoa, &DistConfig { levels: 40, ..base })?;
    let checks = [
        identity.classification == Classification::CompactLike,
        ces_h1.classification == Classification::NonCompactLike && ces_h1.weak_essential_proxy == Some(ces_h1.dist_proxy),
        ces_bmoa.classification == Classification::NotBoundedLike,
        poly_bmoa.classification == Classification::CompactLike && poly_bmoa.dist_proxy < 1e-3,
    ];
    let detail = format!(
        "identity/H^2 {:?} ({:.3e}); cesaro/H^1 {:?} ({:.4}); cesaro/BMOA {:?}; polynomial/BMOA {:?} ({:.3e})",
        identity.classification,
        identity.dist_proxy,
        ces_h1.classification,
        ces_h1.dist_proxy,
        ces_bmoa.classification,
        poly_bmoa.classification,
        poly_bmoa.dist_proxy
    );
    let passed = checks.iter().filter(|&&c| c).count();
    Ok(CheckOutcome::new("classification", passed == checks.len(), passed as f64, checks.len() as f64, detail))
}
