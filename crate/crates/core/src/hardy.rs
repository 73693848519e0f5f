//! Boundary H^p norms and the Möbius-centered BMOA / LMOA seminorms.
//!
//! `‖g∘σ_a − g(a)‖_{H^p}` is evaluated through the conformally invariant form
//! `∫ |g(w) − g(a)|^p P_a(w) dm(w)`, where `P_a(w) = (1 − |a|²)/|w − a|²` is the
//! Poisson kernel. In that variable the singular angles of `g` stay fixed and the
//! only `a`-dependent feature is the Poisson peak of width `1 − |a|` at `arg a`,
//! so a graded composite Gauss–Legendre rule resolves both. For finite sparse
//! symbols and p = 2 the same quantity is the exact double sum
//! `P[|g|²](a) − |g(a)|²`, used instead of quadrature.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::disc::{CircleSamples, DiscPoint, PolarRecord, Symbol, TaylorPoly};
use crate::distances::{divergence_check, LadderFlag};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{circle_rule, Feature, GaussLegendre};

/// Default resolution-guard constant κ in `N·(1 − |a|) ≥ κ`.
pub const DEFAULT_KAPPA: f64 = 10.0;

/// Largest uniform panel count a boundary quadrature may request.
const MAX_BASE_PANELS: usize = 1 << 18;

/// A computed norm or seminorm with the discretization that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormResult {
    pub value: f64,
    pub degree_used: usize,
    pub samples_used: usize,
    pub resolved: bool,
    #[serde(serialize_with = "ser_argmax")]
    pub argmax: Option<DiscPoint>,
}

fn ser_argmax<S: serde::Serializer>(a: &Option<DiscPoint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match a {
        Some(p) => p.to_polar_record().serialize(s),
        None => s.serialize_none(),
    }
}

impl NormResult {
    pub fn argmax_polar(&self) -> Option<PolarRecord> {
        self.argmax.map(|a| a.to_polar_record())
    }
}

/// Boundary quadrature settings shared by the seminorm routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormConfig {
    /// Minimum number of nodes spread uniformly around the circle.
    pub samples: usize,
    /// Gauss–Legendre points per panel.
    pub order: usize,
    pub kappa: f64,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig { samples: 1 << 14, order: 16, kappa: DEFAULT_KAPPA }
    }
}

impl NormConfig {
    pub fn with_samples(samples: usize) -> Self {
        NormConfig { samples, ..Default::default() }
    }

    fn base_panels(&self, bandwidth: f64) -> Result<usize> {
        let from_samples = self.samples.div_ceil(self.order).max(16);
        let from_band = (2.0 * bandwidth).ceil();
        if from_band > MAX_BASE_PANELS as f64 {
            return Err(Error::Unresolved(format!(
                "symbol bandwidth {bandwidth:.3e} is too high for boundary quadrature"
            )));
        }
        Ok(from_samples.max(from_band as usize))
    }
}

/// Möbius-centered search grid over the disc.
#[derive(Debug, Clone, PartialEq)]
pub struct SeminormGrid {
    radii: Vec<f64>,
    angles: Vec<f64>,
    pub config: NormConfig,
}

impl SeminormGrid {
    pub fn new(radii: Vec<f64>, angles: Vec<f64>, config: NormConfig) -> Result<Self> {
        if radii.is_empty() || angles.is_empty() {
            return Err(invalid("seminorm grid must be nonempty"));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) || radii.iter().any(|&r| !(0.0..1.0).contains(&r)) {
            return Err(invalid("grid radii must be strictly increasing in [0, 1)"));
        }
        let mut angles: Vec<f64> = angles.iter().map(|t| t.rem_euclid(2.0 * PI)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        Ok(SeminormGrid { radii, angles, config })
    }

    /// Radii `1 − 2^{−j}` for `j = 1..=levels`, `angles` equispaced centers.
    pub fn dyadic(levels: u32, angles: usize) -> Result<Self> {
        Self::dyadic_from(1, levels, angles)
    }

    pub fn dyadic_from(first: u32, levels: u32, angles: usize) -> Result<Self> {
        let radii = (first..=levels).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect();
        Self::new(radii, equispaced(angles), NormConfig::default())
    }

    /// Adds the symbol's singular angles to the angle list.
    pub fn with_singular_angles(mut self, g: &Symbol) -> Self {
        let mut angles = self.angles.clone();
        angles.extend(g.singular_angles());
        self = Self::new(self.radii, angles, self.config).expect("grid stays valid");
        self
    }

    pub fn with_config(mut self, config: NormConfig) -> Self {
        self.config = config;
        self
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

impl Default for SeminormGrid {
    fn default() -> Self {
        SeminormGrid::dyadic(10, 64).unwrap()
    }
}

pub fn equispaced(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// λ(a) = log(2/(1 − |a|)).
pub fn lambda_weight(a: DiscPoint) -> f64 {
    (2.0 / (1.0 - a.modulus())).ln()
}

/// λ as a function of the modulus `s ∈ [0, 1)`.
pub fn lambda_of_modulus(s: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(invalid(format!("|a| must lie in [0, 1), got {s}")));
    }
    Ok((2.0 / (1.0 - s)).ln())
}

/// `(mean |v|^p)^{1/p}` over the sampled circle.
pub fn boundary_hp_norm(samples: &CircleSamples, p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(invalid(format!("p must be positive, got {p}")));
    }
    if samples.is_empty() {
        return Err(invalid("no samples"));
    }
    let n = samples.len() as f64;
    let step = 2.0 * PI / n;
    let mut acc = 0.0;
    for (k, v) in samples.values().iter().enumerate() {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::SingularSample {
                radius: samples.radius(),
                angle: samples.offset() + step * k as f64,
            });
        }
        acc += v.norm().powf(p);
    }
    Ok((acc / n).powf(1.0 / p))
}

/// H² norm from coefficients (Parseval).
pub fn h2_series_norm(p: &TaylorPoly) -> f64 {
    p.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `(∫ F(θ) dm)` for a nonnegative real integrand on the graded circle rule.
/// Retries once with the nodes rotated if a node lands on a singularity.
fn circle_mean<F: Fn(f64) -> f64>(features: &[Feature], base_panels: usize, order: usize, f: F) -> Result<(f64, usize)> {
    let gl = GaussLegendre::new(order);
    let rule = circle_rule(features, base_panels, &gl);
    for shift in [0.0, 1e-9] {
        let mut acc = 0.0;
        let mut bad = None;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let v = f(t + shift);
            if !v.is_finite() {
                bad = Some(t + shift);
                break;
            }
            acc += w * v;
        }
        match bad {
            None => return Ok((acc, rule.len())),
            Some(angle) if shift != 0.0 => return Err(Error::SingularSample { radius: 1.0, angle }),
            Some(_) => {}
        }
    }
    unreachable!()
}

/// Boundary H^p norm of a closed-form symbol.
pub fn symbol_hp_norm(g: &Symbol, p: f64, config: &NormConfig) -> Result<NormResult> {
    if p.is_nan() || p <= 0.0 {
        return Err(invalid(format!("p must be positive, got {p}")));
    }
    let base = config.base_panels(g.bandwidth())?;
    let (mean, n) = circle_mean(&g.features(), base, config.order, |t| {
        g.eval(Complex64::from_polar(1.0, t)).norm().powf(p)
    })?;
    Ok(NormResult {
        value: mean.powf(1.0 / p),
        degree_used: 0,
        samples_used: n,
        resolved: true,
        argmax: None,
    })
}

/// `P[|g|²](a) − |g(a)|²` for a sparse polynomial, written without cancellation:
/// `Σ_{n,m} c_n c̄_m a^{(n−m)} (1 − |a|^{2 min(n,m)})`.
fn garsia_h2_sq(terms: &[(u64, Complex64)], a: DiscPoint) -> f64 {
    let av = a.value();
    let ln_mod_sq = (-a.one_minus_mod_sq()).ln_1p();
    let damp = |n: u64| -> f64 {
        if n == 0 {
            0.0
        } else {
            -(n as f64 * ln_mod_sq).exp_m1()
        }
    };
    let max_deg = terms.last().map(|t| t.0).unwrap_or(0);
    let table: Option<Vec<Complex64>> = (max_deg <= 1 << 16).then(|| {
        let mut t = Vec::with_capacity(max_deg as usize + 1);
        let mut w = Complex64::new(1.0, 0.0);
        for _ in 0..=max_deg {
            t.push(w);
            w *= av;
        }
        t
    });
    let pow = |k: u64| -> Complex64 {
        match &table {
            Some(t) => t[k as usize],
            None => av.powu(k as u32),
        }
    };
    let mut diag = 0.0;
    let mut off = Complex64::new(0.0, 0.0);
    for (i, &(ni, ci)) in terms.iter().enumerate() {
        diag += ci.norm_sqr() * damp(ni);
        for &(nj, cj) in &terms[..i] {
            let d = damp(nj);
            if d != 0.0 {
                off += ci * cj.conj() * pow(ni - nj) * d;
            }
        }
    }
    (diag + 2.0 * off.re).max(0.0)
}

/// `‖g∘σ_a − g(a)‖_{H^p}`.
pub fn mobius_centered_norm(g: &Symbol, a: DiscPoint, p: f64, config: &NormConfig) -> Result<NormResult> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(invalid(format!("p must be positive, got {p}")));
    }
    let guard = g.taylor_only_degree();
    let resolved = match guard {
        Some(n) => n as f64 * (1.0 - a.modulus()) >= config.kappa,
        None => true,
    };
    if p == 2.0 {
        if let Some(terms) = g.sparse() {
            if terms.len() <= 4096 {
                let v = garsia_h2_sq(&terms, a).sqrt();
                return Ok(NormResult {
                    value: v,
                    degree_used: terms.last().map(|t| t.0 as usize).unwrap_or(0),
                    samples_used: terms.len() * (terms.len() + 1) / 2,
                    resolved,
                    argmax: None,
                });
            }
        }
    }
    mobius_centered_norm_quadrature(g, a, p, config).map(|r| NormResult { resolved, ..r })
}

/// The quadrature route of [`mobius_centered_norm`], regardless of symbol type.
pub fn mobius_centered_norm_quadrature(g: &Symbol, a: DiscPoint, p: f64, config: &NormConfig) -> Result<NormResult> {
    let guard = g.taylor_only_degree();
    let mut features = g.features();
    if a.modulus() > 0.0 {
        features.push(Feature { angle: a.arg(), width: 1.0 - a.modulus() });
    }
    let base = config.base_panels(g.bandwidth())?;
    let ga = g.eval(a.value());
    let av = a.value();
    let weight = a.one_minus_mod_sq();
    let (mean, n) = circle_mean(&features, base, config.order, |t| {
        let w = Complex64::from_polar(1.0, t);
        (g.eval(w) - ga).norm().powf(p) * weight / (w - av).norm_sqr()
    })?;
    Ok(NormResult {
        value: mean.powf(1.0 / p),
        degree_used: guard.unwrap_or(0),
        samples_used: n,
        resolved: true,
        argmax: None,
    })
}

/// Per-radius maxima of a grid sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub radius: f64,
    pub value: f64,
    pub angle: f64,
    pub resolved: bool,
}

/// Maximizes `weight(a)·‖g∘σ_a − g(a)‖_{H^p}` over every grid point.
/// Returns the rows in radius order; ties keep the smallest angle.
pub fn sweep(g: &Symbol, grid: &SeminormGrid, p: f64, lambda: bool) -> Result<(Vec<SweepRow>, usize)> {
    let points: Vec<(usize, f64)> = (0..grid.radii.len())
        .flat_map(|i| grid.angles.iter().map(move |&t| (i, t)))
        .collect();
    let values: Vec<(f64, bool, usize)> = points
        .par_iter()
        .map(|&(i, t)| {
            let a = DiscPoint::polar(grid.radii[i], t)?;
            let r = mobius_centered_norm(g, a, p, &grid.config)?;
            let w = if lambda { lambda_weight(a) } else { 1.0 };
            Ok((w * r.value, r.resolved, r.samples_used))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<SweepRow> = grid
        .radii
        .iter()
        .map(|&r| SweepRow { radius: r, value: f64::NEG_INFINITY, angle: 0.0, resolved: true })
        .collect();
    let mut samples = 0;
    for (&(i, t), &(v, ok, n)) in points.iter().zip(&values) {
        let row = &mut rows[i];
        if v > row.value {
            row.value = v;
            row.angle = t;
        }
        row.resolved &= ok;
        samples = samples.max(n);
    }
    Ok((rows, samples))
}

fn rows_to_result(rows: &[SweepRow], samples: usize) -> NormResult {
    let mut best: Option<&SweepRow> = None;
    for row in rows {
        if best.is_none_or(|b| row.value > b.value) {
            best = Some(row);
        }
    }
    let best = best.expect("nonempty grid");
    NormResult {
        value: best.value,
        degree_used: 0,
        samples_used: samples,
        resolved: rows.iter().all(|r| r.resolved),
        argmax: DiscPoint::polar(best.radius, best.angle).ok(),
    }
}

/// Grid lower bound for `sup_a ‖g∘σ_a − g(a)‖_{H^p}`.
pub fn bmoa_seminorm(g: &Symbol, grid: &SeminormGrid, p: f64) -> Result<NormResult> {
    let (rows, samples) = sweep(g, grid, p, false)?;
    Ok(rows_to_result(&rows, samples))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LmoaResult {
    pub norm: NormResult,
    pub rungs: Vec<SweepRow>,
    pub diverging: bool,
}

/// Grid lower bound for `sup_a λ(a)‖g∘σ_a − g(a)‖_{H²}` with the divergence flag.
pub fn lmoa_seminorm(g: &Symbol, grid: &SeminormGrid) -> Result<LmoaResult> {
    let (rows, samples) = sweep(g, grid, 2.0, true)?;
    let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
    Ok(LmoaResult {
        norm: rows_to_result(&rows, samples),
        diverging: divergence_check(&values) == LadderFlag::Diverging,
        rungs: rows,
    })
}

/// `‖g∘σ_{ra} − g(ra)‖ − ‖g_r∘σ_a − g_r(a)‖`, nonnegative by subordination.
pub fn subordination_gap(g: &Symbol, r: f64, a: DiscPoint, p: f64, config: &NormConfig) -> Result<f64> {
    let gr = Symbol::dilate(g.clone(), r)?;
    let lhs = mobius_centered_norm(&gr, a, p, config)?;
    let rhs = mobius_centered_norm(g, DiscPoint::new(a.value() * r)?, p, config)?;
    Ok(rhs.value - lhs.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::psi_eval;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambda_examples() {
        assert!((lambda_weight(DiscPoint::origin()) - 2f64.ln()).abs() < 1e-15);
        let s = 1.0 - 2.0 * (-2.0f64).exp();
        assert!((lambda_of_modulus(s).unwrap() - 2.0).abs() < 1e-14);
        assert!(lambda_of_modulus(0.9).unwrap() > lambda_of_modulus(0.5).unwrap());
        assert!(lambda_of_modulus(1.0).is_err());
    }

    #[test]
    fn hp_norm_examples() {
        let s = CircleSamples::sample(|_| c(-3.0, 4.0), 1.0, 64, 0.0).unwrap();
        for p in [0.5, 1.0, 3.0] {
            assert!((boundary_hp_norm(&s, p).unwrap() - 5.0).abs() < 1e-13);
        }
        let z = CircleSamples::sample(|z| z, 1.0, 32, 0.1).unwrap();
        assert!((boundary_hp_norm(&z, 2.0).unwrap() - 1.0).abs() < 1e-14);
        let half = DiscPoint::new(c(0.5, 0.0)).unwrap();
        let psi = CircleSamples::sample(|z| psi_eval(0.5, half, z).unwrap(), 1.0, 1024, 0.0).unwrap();
        // r²(1−|a|²)/(1−r⁴|a|²) at r = a = 1/2 is 4/21
        let expect = (4.0f64 / 21.0).sqrt();
        assert!((boundary_hp_norm(&psi, 2.0).unwrap() - expect).abs() < 1e-12);
        assert!(boundary_hp_norm(&psi, 0.0).is_err());
    }

    #[test]
    fn series_norm_examples() {
        assert_eq!(h2_series_norm(&TaylorPoly::from_real(&[0.0, 1.0])), 1.0);
        assert_eq!(h2_series_norm(&TaylorPoly::from_real(&[3.0, 4.0])), 5.0);
    }

    #[test]
    fn identity_centered_norm() {
        let a = DiscPoint::new(c(0.6, 0.0)).unwrap();
        let cfg = NormConfig::with_samples(1024);
        let exact = mobius_centered_norm(&Symbol::Identity, a, 2.0, &cfg).unwrap();
        assert!((exact.value - 0.8).abs() < 1e-14);
        let quad = mobius_centered_norm_quadrature(&Symbol::Identity, a, 2.0, &cfg).unwrap();
        assert!((quad.value - 0.8).abs() < 1e-12, "{}", quad.value);
    }

    #[test]
    fn garsia_matches_quadrature_for_polynomials() {
        let g = Symbol::Polynomial(TaylorPoly::new(vec![c(0.3, 0.1), c(1.0, -0.5), c(0.0, 0.7), c(0.2, 0.2)]).unwrap());
        let cfg = NormConfig::with_samples(2048);
        for &(r, t) in &[(0.0, 0.0), (0.5, 1.0), (0.9, 2.5), (0.999, 4.0)] {
            let a = DiscPoint::polar(r, t).unwrap();
            let exact = mobius_centered_norm(&g, a, 2.0, &cfg).unwrap().value;
            let quad = mobius_centered_norm_quadrature(&g, a, 2.0, &cfg).unwrap().value;
            assert!((exact - quad).abs() < 1e-11 * exact.max(1.0), "{r}: {exact} vs {quad}");
        }
    }

    #[test]
    fn origin_center_is_reflection() {
        let g = Symbol::log_kernel(c(0.5, 0.4)).unwrap();
        let reflected = Symbol::dilate_rotate(g.clone(), 1.0, PI).unwrap();
        let cfg = NormConfig::with_samples(1024);
        for p in [1.0, 2.0, 3.0] {
            let lhs = mobius_centered_norm(&g, DiscPoint::origin(), p, &cfg).unwrap().value;
            let shifted = Symbol::Sum(vec![reflected.clone(), Symbol::constant(-g.eval(c(0.0, 0.0)))]);
            let rhs = symbol_hp_norm(&shifted, p, &cfg).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn cesaro_centered_norm_matches_series() {
        // −log(1+z) + log(1−0.9z) has coefficients ((−1)^k − 0.9^k)/k
        let mut sum = 0.0;
        let mut pw = 1.0;
        for k in 1..=1_000_000u64 {
            pw *= 0.9;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let ck = (sign - pw) / k as f64;
            sum += ck * ck;
        }
        // remaining terms are 1/k² to double precision; add their Euler–Maclaurin tail
        let n = 1e6f64;
        sum += 1.0 / n - 0.5 / (n * n) + 1.0 / (6.0 * n * n * n);
        let expect = sum.sqrt();
        let a = DiscPoint::new(c(0.9, 0.0)).unwrap();
        let v = mobius_centered_norm(&Symbol::Cesaro, a, 2.0, &NormConfig::default()).unwrap().value;
        assert!((v - expect).abs() < 1e-8, "{v} vs {expect}");
    }

    #[test]
    fn seminorm_examples() {
        let grid = SeminormGrid::dyadic(10, 16).unwrap();
        let k = bmoa_seminorm(&Symbol::constant(c(2.0, 1.0)), &grid, 2.0).unwrap();
        assert_eq!(k.value, 0.0);
        let with_origin = SeminormGrid::new(
            std::iter::once(0.0).chain(grid.radii().iter().copied()).collect(),
            equispaced(16),
            NormConfig::default(),
        )
        .unwrap();
        let id = bmoa_seminorm(&Symbol::Identity, &with_origin, 2.0).unwrap();
        assert!((id.value - 1.0).abs() < 1e-14);
        assert_eq!(id.argmax.unwrap().modulus(), 0.0);
    }

    #[test]
    fn cesaro_seminorm_and_lmoa_flag() {
        let grid = SeminormGrid::new(
            vec![0.5, 0.9, 0.99, 0.999],
            equispaced(8),
            NormConfig::with_samples(1024),
        )
        .unwrap();
        let b = bmoa_seminorm(&Symbol::Cesaro, &grid, 2.0).unwrap();
        assert!(b.value >= 2.1, "{}", b.value);
        assert_eq!(b.argmax.unwrap().arg(), 0.0);
        let l = lmoa_seminorm(&Symbol::Cesaro, &SeminormGrid::dyadic(10, 8).unwrap()).unwrap();
        assert!(l.diverging);
        let li = lmoa_seminorm(&Symbol::Identity, &SeminormGrid::dyadic(10, 8).unwrap()).unwrap();
        assert!(!li.diverging);
    }

    #[test]
    fn lmoa_identity_matches_scalar_maximum() {
        let f = |s: f64| (2.0 / (1.0 - s)).ln() * (1.0 - s * s).sqrt();
        // golden-section search for the oracle maximum
        let (mut lo, mut hi) = (0.0f64, 0.999f64);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..200 {
            let x1 = hi - g * (hi - lo);
            let x2 = lo + g * (hi - lo);
            if f(x1) < f(x2) { lo = x1 } else { hi = x2 }
        }
        let s_star = 0.5 * (lo + hi);
        assert!((s_star - 0.79).abs() < 0.01, "{s_star}");
        let radii: Vec<f64> = (0..=1000).map(|i| 0.999 * i as f64 / 1000.0).collect();
        let grid = SeminormGrid::new(radii, vec![0.0, 2.0], NormConfig::default()).unwrap();
        let l = lmoa_seminorm(&Symbol::Identity, &grid).unwrap();
        assert!(l.norm.value <= f(s_star) + 1e-12);
        assert!(f(s_star) - l.norm.value < 1e-5);
    }

    #[test]
    fn subordination_examples() {
        let cfg = NormConfig::with_samples(1024);
        let a = DiscPoint::new(c(0.3, 0.6)).unwrap();
        let gap = subordination_gap(&Symbol::Cesaro, 1.0, a, 2.0, &cfg).unwrap();
        assert!(gap.abs() < 1e-12);
        let gap0 = subordination_gap(&Symbol::Cesaro, 0.7, DiscPoint::origin(), 1.0, &cfg).unwrap();
        assert!(gap0 > 0.0);
    }
}
