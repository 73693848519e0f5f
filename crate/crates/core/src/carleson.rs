//! Carleson windows `S(I)` and the window energy
//! `μ(g, I) = ∫_{S(I)} |g′|²(1 − |z|²) dA` with `dA = r dr dθ / π`.
//!
//! Closed-form symbols are integrated on a tensor grid: radial cells graded
//! geometrically toward the circle, angular panels graded toward boundary
//! features at the scale of each radial cell. Sparse polynomial symbols use the
//! exact double sum over coefficient pairs.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::disc::{DiscPoint, Symbol};
use crate::error::{invalid, Error, Result};
use crate::hardy::{equispaced, NormResult};
use crate::quadrature::{graded_breaks, Feature, GaussLegendre, Rule};

/// A boundary arc: center angle and normalized measure `|I| ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcSpec {
    pub center_angle: f64,
    pub measure: f64,
}

impl ArcSpec {
    pub fn new(center_angle: f64, measure: f64) -> Result<Self> {
        if !(measure > 0.0 && measure <= 1.0) || !center_angle.is_finite() {
            return Err(invalid(format!("arc measure must lie in (0, 1], got {measure}")));
        }
        Ok(ArcSpec { center_angle, measure })
    }

    /// Angular half-width in radians.
    pub fn half_width(&self) -> f64 {
        PI * self.measure
    }

    /// The point `(1 − |I|)ξ` above the midpoint ξ of the arc.
    pub fn top_point(&self) -> DiscPoint {
        DiscPoint::polar(1.0 - self.measure, self.center_angle).expect("measure > 0")
    }

    /// Membership in the window `{1 − |z| < |I|, z/|z| ∈ I}`.
    pub fn window_contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        if r >= 1.0 || 1.0 - r >= self.measure || r == 0.0 {
            return self.measure >= 1.0 && r < 1.0 && (r == 0.0 || 1.0 - r < self.measure);
        }
        let d = (z.arg() - self.center_angle + PI).rem_euclid(2.0 * PI) - PI;
        d.abs() < self.half_width()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowQuadrature {
    pub angular_points: usize,
    pub radial_cells: usize,
    pub radial_grading: f64,
    pub gauss_order: usize,
}

impl Default for WindowQuadrature {
    fn default() -> Self {
        WindowQuadrature { angular_points: 128, radial_cells: 24, radial_grading: 0.5, gauss_order: 8 }
    }
}

impl WindowQuadrature {
    pub fn doubled(&self) -> Self {
        WindowQuadrature {
            angular_points: 2 * self.angular_points,
            radial_cells: 2 * self.radial_cells,
            radial_grading: self.radial_grading,
            gauss_order: 2 * self.gauss_order,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.angular_points == 0 || self.radial_cells == 0 || self.gauss_order == 0 {
            return Err(invalid("window quadrature counts must be positive"));
        }
        if !(self.radial_grading > 0.0 && self.radial_grading < 1.0) {
            return Err(invalid("radial grading ratio must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// `∫_{S(I)} F(z)(1 − |z|²) dA` on the graded tensor grid.
fn window_integral<F: Fn(Complex64) -> f64>(
    features: &[Feature],
    bandwidth: f64,
    arc: ArcSpec,
    quad: &WindowQuadrature,
    f: F,
) -> Result<f64> {
    quad.validate()?;
    let h = arc.measure;
    let lo = arc.center_angle - arc.half_width();
    let hi = arc.center_angle + arc.half_width();
    let gl = GaussLegendre::new(quad.gauss_order);
    let base = quad
        .angular_points
        .div_ceil(quad.gauss_order)
        .max((2.0 * bandwidth * h).ceil() as usize)
        .max(1);

    // Distances t = 1 − r of the radial breakpoints, from h down to 0.
    let mut ts: Vec<f64> = (0..quad.radial_cells)
        .map(|k| h * quad.radial_grading.powi(k as i32))
        .collect();
    ts.push(0.0);

    let run = |shift: f64| -> std::result::Result<f64, f64> {
        let mut total = 0.0;
        for pair in ts.windows(2) {
            let (t_out, t_in) = (pair[0], pair[1]);
            let local: Vec<Feature> = features
                .iter()
                .map(|f| Feature { angle: f.angle, width: f.width.max(t_in) })
                .collect();
            let breaks = graded_breaks(lo, hi, &local, base, Some(2.0 * PI));
            let ang = Rule::from_breaks(&breaks, &gl);
            let r_lo = 1.0 - t_out;
            let r_hi = 1.0 - t_in;
            let rad = Rule::from_breaks(&[r_lo, r_hi], &gl);
            for (&r, &wr) in rad.nodes.iter().zip(&rad.weights) {
                let weight = (1.0 - r) * (1.0 + r) * r;
                let mut acc = 0.0;
                for (&t, &wt) in ang.nodes.iter().zip(&ang.weights) {
                    let v = f(Complex64::from_polar(r, t + shift));
                    if !v.is_finite() {
                        return Err(t + shift);
                    }
                    acc += wt * v;
                }
                total += wr * weight * acc;
            }
        }
        Ok(total / PI)
    };
    match run(0.0) {
        Ok(v) => Ok(v),
        Err(_) => run(1e-9).map_err(|angle| Error::SingularSample { radius: f64::NAN, angle }),
    }
}

/// `R(s) = ∫_{1−h}^{1} r^{s−1}(1 − r²) dr`.
fn radial_moment(s: f64, h: f64) -> f64 {
    if s * h <= 1.0 {
        let gl = GaussLegendre::new(16);
        gl.integrate(0.0, h, |x| ((s - 1.0) * (-x).ln_1p()).exp() * x * (2.0 - x))
    } else {
        let l = (-h).ln_1p();
        let a = -(s * l).exp_m1() / s;
        let b = -((s + 2.0) * l).exp_m1() / (s + 2.0);
        a - b
    }
}

/// `∫_I e^{ikθ} dθ`.
fn arc_moment(k: i64, arc: ArcSpec) -> Complex64 {
    if k == 0 {
        Complex64::new(2.0 * arc.half_width(), 0.0)
    } else {
        let kf = k as f64;
        Complex64::from_polar(2.0 * (kf * arc.half_width()).sin() / kf, kf * arc.center_angle)
    }
}

/// Exact `μ(g, I)` for a sparse polynomial `Σ c_n z^n`.
pub fn mu_window_series(terms: &[(u64, Complex64)], arc: ArcSpec) -> f64 {
    let h = arc.measure;
    let d: Vec<(f64, Complex64)> = terms
        .iter()
        .filter(|(n, _)| *n > 0)
        .map(|&(n, c)| (n as f64, c * n as f64))
        .collect();
    let mut diag = 0.0;
    let mut off = Complex64::new(0.0, 0.0);
    let hw = 2.0 * arc.half_width();
    for (i, &(ni, ci)) in d.iter().enumerate() {
        diag += ci.norm_sqr() * radial_moment(2.0 * ni, h) * hw;
        for &(nj, cj) in &d[..i] {
            let k = ni as i64 - nj as i64;
            off += ci * cj.conj() * radial_moment(ni + nj, h) * arc_moment(k, arc);
        }
    }
    ((diag + 2.0 * off.re) / PI).max(0.0)
}

/// Quadrature value of `μ(g, I)`, regardless of symbol type.
pub fn mu_window_quadrature(g: &Symbol, arc: ArcSpec, quad: &WindowQuadrature) -> Result<f64> {
    window_integral(&g.features(), g.bandwidth(), arc, quad, |z| g.deriv(z).norm_sqr())
}

/// `μ(g, I)`: exact for sparse polynomials, quadrature otherwise.
pub fn mu_window(g: &Symbol, arc: ArcSpec, quad: &WindowQuadrature) -> Result<f64> {
    match g.sparse() {
        Some(terms) if terms.len() <= 4096 => Ok(mu_window_series(&terms, arc)),
        _ => mu_window_quadrature(g, arc, quad),
    }
}

/// `(1/|I|)∫_{S(I)} |f|²|g′|²(1 − |z|²) dA`, the window energy of `T_g f`.
pub fn window_energy_ratio(g: &Symbol, f: &Symbol, arc: ArcSpec, quad: &WindowQuadrature) -> Result<f64> {
    let mut features = g.features();
    features.extend(f.features());
    let band = g.bandwidth() + f.bandwidth();
    let v = window_integral(&features, band, arc, quad, |z| (f.eval(z) * g.deriv(z)).norm_sqr())?;
    Ok(v / arc.measure)
}

/// Arcs of measure `2^{−j}`, `j = 0..=levels`, centered at `angles` equispaced
/// points plus the symbol's singular angles.
pub fn default_arcs(g: &Symbol, levels: u32, angles: usize) -> Vec<ArcSpec> {
    let centers = centers_for(g, angles);
    (0..=levels)
        .flat_map(|j| {
            let h = 0.5f64.powi(j as i32);
            centers.iter().map(move |&c| ArcSpec { center_angle: c, measure: h })
        })
        .collect()
}

fn centers_for(g: &Symbol, angles: usize) -> Vec<f64> {
    let mut centers = equispaced(angles);
    for s in g.singular_angles() {
        let s = s.rem_euclid(2.0 * PI);
        if centers.iter().all(|c| (c - s).abs() > 1e-12) {
            centers.push(s);
        }
    }
    centers.sort_by(|a, b| a.partial_cmp(b).unwrap());
    centers
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlesonSeminorm {
    pub norm: NormResult,
    pub arc: ArcSpec,
}

/// `max_I (μ(g, I)/|I|)^{1/2}` over the given arcs.
pub fn carleson_seminorm(g: &Symbol, arcs: &[ArcSpec], quad: &WindowQuadrature) -> Result<CarlesonSeminorm> {
    if arcs.is_empty() {
        return Err(invalid("need at least one arc"));
    }
    let vals = arcs
        .par_iter()
        .map(|&arc| Ok((mu_window(g, arc, quad)? / arc.measure).sqrt()))
        .collect::<Result<Vec<f64>>>()?;
    let mut best = 0;
    for (i, &v) in vals.iter().enumerate() {
        if v > vals[best] {
            best = i;
        }
    }
    Ok(CarlesonSeminorm {
        norm: NormResult {
            value: vals[best],
            degree_used: 0,
            samples_used: arcs.len(),
            resolved: true,
            argmax: Some(arcs[best].top_point()),
        },
        arc: arcs[best],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarlesonRung {
    pub size: f64,
    pub log_factor: f64,
    pub ratio: f64,
    pub value: f64,
    pub angle: f64,
}

/// Ladder of `log(2/|I|)(μ/|I|)^{1/2}` maxima by arc size, with the squared
/// tail maximum reported as α̂.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlesonLadder {
    pub alpha_hat: f64,
    pub rungs: Vec<CarlesonRung>,
}

impl CarlesonLadder {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        let io = |e: csv::Error| Error::InvalidParameter(e.to_string());
        w.write_record(["size", "log_factor", "ratio", "value"]).map_err(io)?;
        for r in &self.rungs {
            w.write_record([
                crate::format_float(r.size),
                crate::format_float(r.log_factor),
                crate::format_float(r.ratio),
                crate::format_float(r.value),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn log_carleson_ladder(
    g: &Symbol,
    sizes: &[f64],
    angles: &[f64],
    quad: &WindowQuadrature,
) -> Result<CarlesonLadder> {
    if sizes.is_empty() || angles.is_empty() {
        return Err(invalid("ladder needs sizes and angles"));
    }
    if sizes.windows(2).any(|w| w[1] >= w[0]) || sizes.iter().any(|&s| !(s > 0.0 && s <= 1.0)) {
        return Err(invalid("arc sizes must be strictly decreasing in (0, 1]"));
    }
    let mut centers = angles.to_vec();
    for s in g.singular_angles() {
        if centers.iter().all(|c| (c - s).abs() > 1e-12) {
            centers.push(s);
        }
    }
    let cells: Vec<(usize, f64)> = (0..sizes.len())
        .flat_map(|i| centers.iter().map(move |&c| (i, c)))
        .collect();
    let ratios = cells
        .par_iter()
        .map(|&(i, c)| {
            let arc = ArcSpec::new(c, sizes[i])?;
            Ok(mu_window(g, arc, quad)? / arc.measure)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut rungs: Vec<CarlesonRung> = sizes
        .iter()
        .map(|&s| CarlesonRung {
            size: s,
            log_factor: (2.0 / s).ln(),
            ratio: f64::NEG_INFINITY,
            value: f64::NEG_INFINITY,
            angle: 0.0,
        })
        .collect();
    for (&(i, c), &ratio) in cells.iter().zip(&ratios) {
        let rung = &mut rungs[i];
        let v = rung.log_factor * ratio.sqrt();
        if v > rung.value {
            rung.value = v;
            rung.ratio = ratio;
            rung.angle = c;
        }
    }
    let tail = rungs[rungs.len().saturating_sub(3)..]
        .iter()
        .map(|r| r.value)
        .fold(0.0, f64::max);
    Ok(CarlesonLadder { alpha_hat: tail * tail, rungs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::TaylorPoly;

    fn identity_mu(h: f64) -> f64 {
        // (1/π)·(2πh)·∫_{1−h}^1 (r − r³) dr
        let t: f64 = 1.0 - h;
        2.0 * h * (0.25 - (t * t / 2.0 - t.powi(4) / 4.0))
    }

    #[test]
    fn identity_window_matches_polar_integral() {
        let arc = ArcSpec::new(0.3, 0.5).unwrap();
        let quad = WindowQuadrature::default();
        assert!((identity_mu(0.5) - 0.140625).abs() < 1e-15);
        let q = mu_window_quadrature(&Symbol::Identity, arc, &quad).unwrap();
        let s = mu_window(&Symbol::Identity, arc, &quad).unwrap();
        assert!((q - 0.140625).abs() < 1e-12, "{q}");
        assert!((s - 0.140625).abs() < 1e-14, "{s}");
    }

    #[test]
    fn constant_has_no_energy() {
        let k = Symbol::constant(Complex64::new(3.0, 1.0));
        let arc = ArcSpec::new(1.0, 0.25).unwrap();
        assert_eq!(mu_window(&k, arc, &WindowQuadrature::default()).unwrap(), 0.0);
        let e = window_energy_ratio(&k, &Symbol::Cesaro, arc, &WindowQuadrature::default()).unwrap();
        assert_eq!(e, 0.0);
    }

    #[test]
    fn series_matches_quadrature() {
        let g = Symbol::Polynomial(
            TaylorPoly::new(vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.5),
                Complex64::new(-0.3, 0.2),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.25, -0.1),
            ])
            .unwrap(),
        );
        for &(c, h) in &[(0.0, 1.0), (1.2, 0.5), (4.0, 0.125), (2.0, 1.0 / 1024.0)] {
            let arc = ArcSpec::new(c, h).unwrap();
            let exact = mu_window_series(&g.sparse().unwrap(), arc);
            let quad = mu_window_quadrature(&g, arc, &WindowQuadrature::default()).unwrap();
            assert!((exact - quad).abs() <= 1e-11 * exact.max(1e-12), "{h}: {exact} {quad}");
        }
    }

    #[test]
    fn energy_with_unit_f_is_mu_ratio() {
        let one = Symbol::constant(Complex64::new(1.0, 0.0));
        let g = Symbol::log_kernel(Complex64::new(0.7, 0.2)).unwrap();
        let arc = ArcSpec::new(0.28, 0.125).unwrap();
        let quad = WindowQuadrature::default();
        let e = window_energy_ratio(&g, &one, arc, &quad).unwrap();
        let m = mu_window(&g, arc, &quad).unwrap() / arc.measure;
        assert!((e - m).abs() < 1e-12 * m);
    }

    #[test]
    fn cesaro_window_self_converges() {
        let arc = ArcSpec::new(0.0, 1.0 / 64.0).unwrap();
        let quad = WindowQuadrature::default();
        let a = mu_window(&Symbol::Cesaro, arc, &quad).unwrap();
        let b = mu_window(&Symbol::Cesaro, arc, &quad.doubled()).unwrap();
        assert!(((a - b) / b).abs() < 1e-4, "{a} {b}");
        assert!(a > 0.0);
    }

    #[test]
    fn identity_carleson_seminorm() {
        let arcs = default_arcs(&Symbol::Identity, 6, 8);
        let s = carleson_seminorm(&Symbol::Identity, &arcs, &WindowQuadrature::default()).unwrap();
        assert!((s.norm.value - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(s.arc.measure, 1.0);
    }

    #[test]
    fn identity_log_ladder_decreases() {
        let sizes: Vec<f64> = (1..=12).map(|j| 0.5f64.powi(j)).collect();
        let l = log_carleson_ladder(&Symbol::Identity, &sizes, &equispaced(4), &WindowQuadrature::default()).unwrap();
        assert!(l.rungs.windows(2).all(|w| w[1].value < w[0].value));
        assert!(l.rungs.last().unwrap().value < 1e-2);
        let k = log_carleson_ladder(&Symbol::constant(Complex64::new(1.0, 0.0)), &sizes, &[0.0], &WindowQuadrature::default()).unwrap();
        assert_eq!(k.alpha_hat, 0.0);
    }

    #[test]
    fn rejects_bad_arcs() {
        assert!(ArcSpec::new(0.0, 0.0).is_err());
        assert!(ArcSpec::new(0.0, 1.5).is_err());
        assert!(log_carleson_ladder(&Symbol::Identity, &[0.25, 0.5], &[0.0], &WindowQuadrature::default()).is_err());
    }
}
