//! The Volterra operator `T_g f(z) = ∫_0^z f(ζ) g′(ζ) dζ`, the unit-norm
//! test functions `f_a`, and the quantities built from them: the lower-bound
//! ratio against centered norms, the off-arc tail integral, and the sequence
//! `f_n = log(1 − ū_n z)` of shrinking log kernels.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::carleson::ArcSpec;
use crate::disc::{CircleSamples, DiscPoint, Symbol, TaylorPoly};
use crate::error::{invalid, Error, Result};
use crate::hardy::{boundary_hp_norm, bmoa_seminorm, h2_series_norm, mobius_centered_norm, NormConfig, SeminormGrid};
use crate::quadrature::{circle_rule, graded_breaks, Feature, GaussLegendre, Rule};

/// `T_g f` truncated to degree `n`, with zero constant term.
pub fn tg_apply_poly(g: &TaylorPoly, f: &TaylorPoly, n: usize) -> TaylorPoly {
    if n == 0 {
        return TaylorPoly::zero();
    }
    f.cauchy_product(&g.derivative(), n - 1).antiderivative().truncate(n)
}

pub fn tg_apply(g: &Symbol, f: &Symbol, n: usize) -> TaylorPoly {
    tg_apply_poly(&g.taylor(n), &f.taylor(n), n)
}

/// Adaptive radial rule for `∫_0^1 F(rζ) dr`: cells `[1 − 2^{−k}, 1 − 2^{−k−1}]`
/// are added until the running value with a one-panel tail estimate settles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialQuadrature {
    pub order: usize,
    pub ratio: f64,
    pub max_cells: usize,
    pub tol: f64,
}

impl Default for RadialQuadrature {
    fn default() -> Self {
        RadialQuadrature { order: 16, ratio: 0.5, max_cells: 40, tol: 1e-9 }
    }
}

impl RadialQuadrature {
    pub fn doubled(&self) -> Self {
        RadialQuadrature { order: 2 * self.order, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayValue {
    pub re: f64,
    pub im: f64,
    pub converged: bool,
    pub cells: usize,
}

impl RayValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    ((a - b + PI).rem_euclid(2.0 * PI) - PI).abs()
}

/// `T_g f(e^{iθ}) = ∫_0^1 f(rζ) g′(rζ) ζ dr` along the radius.
pub fn tg_boundary_value(g: &Symbol, f: &Symbol, theta: f64, quad: &RadialQuadrature) -> Result<RayValue> {
    if !(quad.ratio > 0.0 && quad.ratio < 1.0) || quad.order == 0 || quad.max_cells < 2 {
        return Err(invalid("radial quadrature needs order > 0, ratio in (0, 1), at least 2 cells"));
    }
    for s in g.singular_angles().into_iter().chain(f.singular_angles()) {
        if angle_gap(s, theta) < 1e-14 {
            return Err(Error::SingularRay(theta));
        }
    }
    let gl = GaussLegendre::new(quad.order);
    let zeta = Complex64::from_polar(1.0, theta);
    let integrand = |r: f64| {
        let z = zeta * r;
        f.eval(z) * g.deriv(z) * zeta
    };
    let panel = |lo: f64, hi: f64| -> Result<Complex64> {
        let re = gl.integrate(lo, hi, |r| integrand(r).re);
        let im = gl.integrate(lo, hi, |r| integrand(r).im);
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::SingularRay(theta));
        }
        Ok(Complex64::new(re, im))
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut lo = 0.0;
    let mut gap = 1.0;
    let mut prev: Option<Complex64> = None;
    for k in 0..quad.max_cells {
        gap *= quad.ratio;
        let hi = 1.0 - gap;
        sum += panel(lo, hi)?;
        lo = hi;
        let value = sum + panel(lo, 1.0)?;
        if let Some(p) = prev {
            if (value - p).norm() < quad.tol {
                return Ok(RayValue { re: value.re, im: value.im, converged: true, cells: k + 1 });
            }
        }
        prev = Some(value);
    }
    let v = prev.expect("at least one cell");
    Ok(RayValue { re: v.re, im: v.im, converged: false, cells: quad.max_cells })
}

/// Parameters of `f_a(z) = [(1 − |a|²)/(1 − āz)²]^{1/p}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFnParams {
    pub a: DiscPoint,
    pub p: f64,
}

impl TestFnParams {
    pub fn new(a: DiscPoint, p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(invalid(format!("test functions need p >= 1, got {p}")));
        }
        Ok(TestFnParams { a, p })
    }
}

pub fn hp_testfn(params: TestFnParams) -> Symbol {
    Symbol::HpTest { a: params.a, p: params.p }
}

fn is_constant(g: &Symbol) -> bool {
    match g.sparse() {
        Some(terms) => terms.iter().all(|(n, _)| *n == 0),
        None => false,
    }
}

/// Circle quadrature of `|F(θ)|^p` with rays evaluated in parallel.
fn ray_hp_mean(
    g: &Symbol,
    f: &Symbol,
    p: f64,
    features: &[Feature],
    base_panels: usize,
    quad: &RadialQuadrature,
) -> Result<(f64, bool)> {
    let gl = GaussLegendre::new(16);
    let rule = circle_rule(features, base_panels, &gl);
    let rays = rule
        .nodes
        .par_iter()
        .map(|&t| tg_boundary_value(g, f, t, quad))
        .collect::<Result<Vec<_>>>()?;
    let mean: f64 = rays.iter().zip(&rule.weights).map(|(r, w)| w * r.value().norm().powf(p)).sum();
    Ok((mean, rays.iter().all(|r| r.converged)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NumeratorPath {
    Radial,
    Taylor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioConfig {
    pub norm: NormConfig,
    pub radial: RadialQuadrature,
    /// Baseline uniform panel count on the circle for the radial path.
    pub panels: usize,
    /// Truncation degree for the series path.
    pub degree: usize,
}

impl Default for RatioConfig {
    fn default() -> Self {
        RatioConfig { norm: NormConfig::default(), radial: RadialQuadrature::default(), panels: 32, degree: 1024 }
    }
}

impl RatioConfig {
    pub fn doubled(&self) -> Self {
        RatioConfig {
            norm: NormConfig { samples: 2 * self.norm.samples, order: 2 * self.norm.order, ..self.norm },
            radial: self.radial.doubled(),
            panels: 2 * self.panels,
            degree: 2 * self.degree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioResult {
    pub ratio: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub path: NumeratorPath,
    pub converged: bool,
}

/// `‖T_g f_a‖_{H^p}`, by radial rays unless the truncated series is trustworthy.
pub fn tg_testfn_norm(g: &Symbol, a: DiscPoint, p: f64, config: &RatioConfig) -> Result<(f64, NumeratorPath, bool)> {
    let fa = hp_testfn(TestFnParams::new(a, p)?);
    let smooth = g.features().iter().all(|f| !f.is_singular());
    let guard = config.degree as f64 * (1.0 - a.modulus()) >= config.norm.kappa;
    if smooth && a.modulus() <= 0.9 && guard && g.bandwidth() <= config.degree as f64 {
        let t = tg_apply(g, &fa, config.degree);
        let n = (4 * config.degree).next_power_of_two();
        let s = CircleSamples::sample_offset(|z| t.eval(z), 1.0, n)?;
        return Ok((boundary_hp_norm(&s, p)?, NumeratorPath::Taylor, true));
    }
    let mut features = g.features();
    features.extend(fa.features());
    let base = config.panels.max((2.0 * g.bandwidth() / 16.0).ceil() as usize);
    let (mean, converged) = ray_hp_mean(g, &fa, p, &features, base, &config.radial)?;
    Ok((mean.powf(1.0 / p), NumeratorPath::Radial, converged))
}

/// `‖T_g f_a‖_{H^p} / ‖g∘σ_a − g(a)‖_{H^q}` for `0 < q < p/2`.
pub fn aleman_cima_ratio(g: &Symbol, a: DiscPoint, p: f64, q: f64, config: &RatioConfig) -> Result<RatioResult> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(invalid(format!("p must be >= 1, got {p}")));
    }
    if !(q > 0.0 && q < p / 2.0) {
        return Err(invalid(format!("q must lie in (0, p/2), got q = {q} with p = {p}")));
    }
    if is_constant(g) {
        return Err(Error::DegenerateSymbol("constant symbol gives 0/0".into()));
    }
    let denominator = mobius_centered_norm(g, a, q, &config.norm)?.value;
    if denominator == 0.0 {
        return Err(Error::DegenerateSymbol("centered norm vanishes".into()));
    }
    let (numerator, path, converged) = tg_testfn_norm(g, a, p, config)?;
    Ok(RatioResult { ratio: numerator / denominator, numerator, denominator, path, converged })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailConfig {
    pub nodes: usize,
    pub order: usize,
    pub radial: RadialQuadrature,
}

impl Default for TailConfig {
    fn default() -> Self {
        TailConfig { nodes: 4096, order: 16, radial: RadialQuadrature::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailResult {
    pub value: f64,
    pub half_width: f64,
    pub converged: bool,
}

/// `∫_{T∖I(a)} |T_g f_a| dm` with `f_a` the H¹ test function and
/// `I(a) = {|θ − arg a| < (1 − |a|)^{1/6}}`.
pub fn offarc_tail_integral(g: &Symbol, a: DiscPoint, config: &TailConfig) -> Result<TailResult> {
    if a.modulus() == 0.0 {
        return Err(invalid("the off-arc tail needs a nonzero center"));
    }
    if config.nodes == 0 || config.order == 0 {
        return Err(invalid("tail quadrature counts must be positive"));
    }
    let half_width = (1.0 - a.modulus()).powf(1.0 / 6.0);
    let fa = hp_testfn(TestFnParams::new(a, 1.0)?);
    let lo = a.arg() + half_width;
    let hi = a.arg() + 2.0 * PI - half_width;
    let singular: Vec<Feature> = g.features().into_iter().filter(Feature::is_singular).collect();
    let gl = GaussLegendre::new(config.order);
    let breaks = graded_breaks(lo, hi, &singular, config.nodes.div_ceil(config.order), Some(2.0 * PI));
    let rule = Rule::from_breaks(&breaks, &gl);
    let rays = rule
        .nodes
        .par_iter()
        .map(|&t| tg_boundary_value(g, &fa, t, &config.radial))
        .collect::<Result<Vec<_>>>()?;
    let sum: f64 = rays.iter().zip(&rule.weights).map(|(r, w)| w * r.value().norm()).sum();
    Ok(TailResult {
        value: sum / (2.0 * PI),
        half_width,
        converged: rays.iter().all(|r| r.converged),
    })
}

/// `Σ_k |u^k − v^k|²/k²`, summed until a geometric bound on the remainder
/// drops below `1e−18`.
pub fn h_norm_sq_series(u: DiscPoint, v: DiscPoint) -> f64 {
    let rho = u.modulus().max(v.modulus());
    if rho == 0.0 {
        return 0.0;
    }
    let log_pow = |p: DiscPoint| Complex64::new((-(1.0 - p.modulus())).ln_1p(), p.arg());
    let (lu, lv) = (log_pow(u), log_pow(v));
    let zero_u = u.modulus() == 0.0;
    let zero_v = v.modulus() == 0.0;
    let one_minus_rho_sq = (1.0 - rho) * (1.0 + rho);
    let mut sum = 0.0;
    let mut k = 1u64;
    loop {
        let kf = k as f64;
        let uk = if zero_u { Complex64::new(0.0, 0.0) } else { (lu * kf).exp() };
        let vk = if zero_v { Complex64::new(0.0, 0.0) } else { (lv * kf).exp() };
        sum += (uk - vk).norm_sqr() / (kf * kf);
        let next = kf + 1.0;
        let bound = 4.0 * (2.0 * next * rho.ln()).exp() / (next * next * one_minus_rho_sq);
        if bound < 1e-18 {
            return sum;
        }
        k += 1;
    }
}

fn truncation_degree(rho: f64) -> Option<usize> {
    if rho == 0.0 {
        return Some(1);
    }
    let n = (40.0 / -(-(1.0 - rho)).ln_1p()).ceil();
    (n <= (1u64 << 20) as f64).then_some(n as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeibovRow {
    pub n: usize,
    pub size: f64,
    pub u_re: f64,
    pub u_im: f64,
    pub h2_norm_series: f64,
    pub h2_norm_quad: Option<f64>,
    pub bmoa_seminorm: f64,
    pub empirical_c: f64,
}

#[derive(Debug, Clone)]
pub struct LeibovSequence {
    pub arcs: Vec<ArcSpec>,
    pub u: Vec<DiscPoint>,
    pub f: Vec<Symbol>,
    pub h: Vec<Symbol>,
    pub diagnostics: Vec<LeibovRow>,
}

impl LeibovSequence {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        let io = |e: csv::Error| Error::InvalidParameter(e.to_string());
        w.write_record(["n", "size", "u_re", "u_im", "h2_norm_series", "h2_norm_quad", "bmoa_seminorm", "empirical_c"])
            .map_err(io)?;
        for r in &self.diagnostics {
            w.write_record([
                r.n.to_string(),
                crate::format_float(r.size),
                crate::format_float(r.u_re),
                crate::format_float(r.u_im),
                crate::format_float(r.h2_norm_series),
                r.h2_norm_quad.map(crate::format_float).unwrap_or_default(),
                crate::format_float(r.bmoa_seminorm),
                crate::format_float(r.empirical_c),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeibovConfig {
    /// Grid for the BMOA seminorm of each `h_n`; the arc centers are added to its angles.
    pub grid: SeminormGrid,
    /// Angular and radial sample counts over each window.
    pub window_angles: usize,
}

impl Default for LeibovConfig {
    fn default() -> Self {
        LeibovConfig {
            grid: SeminormGrid::dyadic(10, 16).expect("valid grid").with_config(NormConfig::with_samples(1024)),
            window_angles: 33,
        }
    }
}

/// Fractions of `|I|` at which `1 − |z|` is sampled inside a window.
const WINDOW_DEPTHS: [f64; 10] = [0.999, 0.9, 0.75, 0.5, 0.25, 0.1, 1e-2, 1e-3, 1e-6, 0.0];

/// `min |f(z)| / log(2/|I|)` over a sample of the closed window over `arc`.
pub fn window_log_constant(f: &Symbol, arc: ArcSpec, angles: usize) -> f64 {
    let scale = (2.0 / arc.measure).ln();
    let m = angles.max(2);
    let mut best = f64::INFINITY;
    for &x in &WINDOW_DEPTHS {
        let r = 1.0 - arc.measure * x;
        for i in 0..m {
            let t = arc.center_angle - arc.half_width() + 2.0 * arc.half_width() * i as f64 / (m - 1) as f64;
            let v = f.eval(Complex64::from_polar(r, t)).norm() / scale;
            best = best.min(v);
        }
    }
    best
}

/// Builds `u_n = (1 − |I_n|)ξ_n`, `f_n = log(1 − ū_n z)` and `h_n = f_{n+1} − f_n`
/// with per-n diagnostics. One center is broadcast to every arc.
pub fn leibov_build(sizes: &[f64], centers: &[f64], config: &LeibovConfig) -> Result<LeibovSequence> {
    if sizes.len() < 2 {
        return Err(invalid("need at least two arc sizes"));
    }
    if sizes.windows(2).any(|w| w[1] >= w[0]) || sizes.iter().any(|&s| !(s >= 2f64.powi(-20) && s <= 1.0)) {
        return Err(invalid("arc sizes must be strictly decreasing within [2^-20, 1]"));
    }
    let centers: Vec<f64> = match centers.len() {
        1 => vec![centers[0]; sizes.len()],
        n if n == sizes.len() => centers.to_vec(),
        _ => return Err(invalid("give one center or one per arc size")),
    };
    let arcs = sizes
        .iter()
        .zip(&centers)
        .map(|(&s, &c)| ArcSpec::new(c, s))
        .collect::<Result<Vec<_>>>()?;
    let u = arcs
        .iter()
        .map(|a| DiscPoint::polar(1.0 - a.measure, a.center_angle))
        .collect::<Result<Vec<_>>>()?;
    let f = u.iter().map(|p| Symbol::log_kernel(p.value())).collect::<Result<Vec<_>>>()?;
    let h: Vec<Symbol> = f.windows(2).map(|w| w[1].clone().minus(w[0].clone())).collect();
    let grid = SeminormGrid::new(
        config.grid.radii().to_vec(),
        config.grid.angles().iter().copied().chain(centers.iter().copied()).collect(),
        config.grid.config,
    )?;
    let diagnostics = (0..h.len())
        .into_par_iter()
        .map(|i| {
            let series = h_norm_sq_series(u[i], u[i + 1]).sqrt();
            let rho = u[i].modulus().max(u[i + 1].modulus());
            let quad = truncation_degree(rho).map(|n| h2_series_norm(&h[i].taylor(n)));
            let semi = bmoa_seminorm(&h[i], &grid, 2.0)?;
            Ok(LeibovRow {
                n: i + 1,
                size: arcs[i].measure,
                u_re: u[i].value().re,
                u_im: u[i].value().im,
                h2_norm_series: series,
                h2_norm_quad: quad,
                bmoa_seminorm: semi.value,
                empirical_c: window_log_constant(&f[i], arcs[i], config.window_angles),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LeibovSequence { arcs, u, f, h, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one() -> Symbol {
        Symbol::constant(c(1.0, 0.0))
    }

    #[test]
    fn apply_examples() {
        let f = Symbol::Polynomial(TaylorPoly::from_real(&[2.0, -1.0, 3.0]));
        assert_eq!(tg_apply(&Symbol::Identity, &f, 3), f.taylor(2).antiderivative().truncate(3));
        assert_eq!(tg_apply(&Symbol::Cesaro, &one(), 4), Symbol::Cesaro.taylor(4));
        let g = Symbol::Polynomial(TaylorPoly::from_real(&[5.0, 1.0, 2.0]));
        assert_eq!(tg_apply(&g, &one(), 2), TaylorPoly::from_real(&[0.0, 1.0, 2.0]));
        assert_eq!(tg_apply(&Symbol::Identity, &one(), 4), TaylorPoly::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn ray_examples() {
        let q = RadialQuadrature::default();
        let v = tg_boundary_value(&Symbol::Identity, &one(), 0.0, &q).unwrap();
        assert!((v.value() - c(1.0, 0.0)).norm() < 1e-15 && v.converged);
        assert!(matches!(tg_boundary_value(&Symbol::Cesaro, &one(), 0.0, &q), Err(Error::SingularRay(_))));
        let fa = hp_testfn(TestFnParams::new(DiscPoint::new(c(0.9, 0.0)).unwrap(), 1.0).unwrap());
        let a = tg_boundary_value(&Symbol::Cesaro, &fa, PI, &q).unwrap();
        let b = tg_boundary_value(&Symbol::Cesaro, &fa, PI, &q.doubled()).unwrap();
        assert!(a.converged && (a.value() - b.value()).norm() < 1e-9);
    }

    #[test]
    fn two_paths_agree_for_polynomials() {
        let g = Symbol::Polynomial(TaylorPoly::new((0..=40).map(|k| c(1.0 / (k as f64 + 1.0), (k % 3) as f64 * 0.1)).collect()).unwrap());
        let f = Symbol::Polynomial(TaylorPoly::new((0..=30).map(|k| c((k as f64 * 0.7).cos(), 0.2)).collect()).unwrap());
        let t = tg_apply(&g, &f, 80);
        let q = RadialQuadrature::default();
        for i in 0..128 {
            let th = 2.0 * PI * i as f64 / 128.0;
            let ray = tg_boundary_value(&g, &f, th, &q).unwrap().value();
            let series = t.eval(Complex64::from_polar(1.0, th));
            assert!((ray - series).norm() < 1e-9 * series.norm().max(1.0), "{i}");
        }
    }

    #[test]
    fn testfn_examples() {
        let a0 = hp_testfn(TestFnParams::new(DiscPoint::origin(), 3.0).unwrap());
        assert!((a0.eval(c(0.3, 0.8)) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(TestFnParams::new(DiscPoint::origin(), 0.5).is_err());
    }

    #[test]
    fn ratio_rejects_bad_input() {
        let a = DiscPoint::new(c(0.5, 0.0)).unwrap();
        let cfg = RatioConfig::default();
        let k = Symbol::constant(c(2.0, 0.0));
        assert_eq!(aleman_cima_ratio(&k, a, 2.0, 0.5, &cfg).unwrap_err().kind(), "degenerate-symbol");
        assert_eq!(aleman_cima_ratio(&Symbol::Identity, a, 2.0, 1.0, &cfg).unwrap_err().kind(), "invalid-parameter");
    }

    #[test]
    fn identity_ratio_paths_agree() {
        let cfg = RatioConfig::default();
        let a = DiscPoint::new(c(0.6, 0.3)).unwrap();
        let (taylor, path, _) = tg_testfn_norm(&Symbol::Identity, a, 2.0, &cfg).unwrap();
        assert_eq!(path, NumeratorPath::Taylor);
        let fa = hp_testfn(TestFnParams::new(a, 2.0).unwrap());
        let (mean, ok) = ray_hp_mean(&Symbol::Identity, &fa, 2.0, &fa.features(), 32, &cfg.radial).unwrap();
        assert!(ok);
        assert!((mean.sqrt() - taylor).abs() < 1e-9, "{} {}", mean.sqrt(), taylor);
    }

    #[test]
    fn tail_examples() {
        let cfg = TailConfig::default();
        let a = DiscPoint::new(c(0.9, 0.0)).unwrap();
        assert_eq!(offarc_tail_integral(&Symbol::constant(c(1.0, 1.0)), a, &cfg).unwrap().value, 0.0);
        assert!(offarc_tail_integral(&Symbol::Cesaro, DiscPoint::origin(), &cfg).is_err());
        let t = offarc_tail_integral(&Symbol::Identity, a, &cfg).unwrap();
        let (full, _, _) = tg_testfn_norm(&Symbol::Identity, a, 1.0, &RatioConfig::default()).unwrap();
        assert!(t.value > 0.0 && t.value <= full, "{} {}", t.value, full);
    }

    #[test]
    fn leibov_first_difference() {
        let seq = leibov_build(&[0.5, 0.25], &[0.0], &LeibovConfig::default()).unwrap();
        let mut oracle = 0.0;
        for k in 1..=400 {
            let d = 0.5f64.powi(k) - 0.75f64.powi(k);
            oracle += d * d / (k * k) as f64;
        }
        let row = &seq.diagnostics[0];
        assert!((row.h2_norm_series.powi(2) - oracle).abs() < 1e-12);
        assert!((row.h2_norm_quad.unwrap() - row.h2_norm_series).abs() < 1e-12);
        assert!(seq.f.iter().all(|f| f.eval(c(0.0, 0.0)).norm() == 0.0));
        assert!((seq.u[1].modulus() - 0.75).abs() == 0.0);
        assert!(seq.to_csv().unwrap().starts_with("n,size,u_re,u_im,h2_norm_series"));
    }

    #[test]
    fn leibov_rejects_bad_sizes() {
        let cfg = LeibovConfig::default();
        assert!(leibov_build(&[0.25, 0.5], &[0.0], &cfg).is_err());
        assert!(leibov_build(&[0.5, 1e-9], &[0.0], &cfg).is_err());
        assert!(leibov_build(&[0.5, 0.25, 0.125], &[0.0, 1.0], &cfg).is_err());
    }

    fn poly() -> impl Strategy<Value = TaylorPoly> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..10)
            .prop_map(|v| TaylorPoly::new(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn apply_is_linear_in_both_slots(g in poly(), h in poly(), f1 in poly(), f2 in poly(), al in -2.0f64..2.0, be in -2.0f64..2.0, n in 0usize..12) {
            let (al, be) = (c(al, 0.0), c(be, 0.0));
            let lhs = tg_apply_poly(&g, &(&f1.scale(al) + &f2.scale(be)), n);
            let rhs = &tg_apply_poly(&g, &f1, n).scale(al) + &tg_apply_poly(&g, &f2, n).scale(be);
            prop_assert!((&lhs - &rhs).coeffs().iter().all(|x| x.norm() < 1e-12));
            let sum = tg_apply_poly(&(&g + &h), &f1, n);
            let split = &tg_apply_poly(&g, &f1, n) + &tg_apply_poly(&h, &f1, n);
            prop_assert!((&sum - &split).coeffs().iter().all(|x| x.norm() < 1e-12));
            prop_assert_eq!(lhs.coeffs()[0], c(0.0, 0.0));
        }
    }
}
