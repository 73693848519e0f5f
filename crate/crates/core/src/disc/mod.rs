//! Points of the disc, Möbius automorphisms, truncated series and symbols.

mod symbol;
mod taylor;

pub use symbol::{make_symbol, registry, Symbol, SymbolSpec};
pub use taylor::TaylorPoly;

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 {
            return Err(invalid(format!("|a| must be < 1, got {z}")));
        }
        Ok(DiscPoint(z))
    }

    pub fn polar(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(invalid(format!("radius must lie in [0, 1), got {r}")));
        }
        Ok(DiscPoint(Complex64::from_polar(r, theta)))
    }

    pub fn origin() -> Self {
        DiscPoint(Complex64::new(0.0, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }

    pub fn arg(&self) -> f64 {
        self.0.arg()
    }

    /// `1 − |a|²`, factored to keep relative accuracy near the circle.
    pub fn one_minus_mod_sq(&self) -> f64 {
        let r = self.modulus();
        (1.0 - r) * (1.0 + r)
    }

    /// `(r, θ)` record used in serialized output.
    pub fn to_polar_record(&self) -> PolarRecord {
        PolarRecord {
            r: self.modulus(),
            theta: self.arg(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarRecord {
    pub r: f64,
    pub theta: f64,
}

/// The involutive automorphism σ_a(z) = (a − z)/(1 − āz).
pub fn mobius_eval(a: DiscPoint, z: Complex64) -> Complex64 {
    let a = a.value();
    (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// ψ_{r,a} = σ_{ra} ∘ (r·σ_a), a self-map of the disc fixing the origin.
pub fn psi_eval(r: f64, a: DiscPoint, z: Complex64) -> Result<Complex64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(invalid(format!("dilation r must lie in (0, 1], got {r}")));
    }
    let ra = DiscPoint(a.value() * r);
    Ok(mobius_eval(ra, mobius_eval(a, z) * r))
}

/// Values of a function on an equispaced grid of a circle.
#[derive(Debug, Clone)]
pub struct CircleSamples {
    radius: f64,
    offset: f64,
    values: Vec<Complex64>,
}

impl CircleSamples {
    /// Samples `f` at `radius·e^{i(offset + 2πk/n)}`. `n` must be a power of two.
    pub fn sample<F: Fn(Complex64) -> Complex64>(
        f: F,
        radius: f64,
        n: usize,
        offset: f64,
    ) -> Result<Self> {
        if !n.is_power_of_two() {
            return Err(invalid(format!("sample count must be a power of two, got {n}")));
        }
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(invalid(format!("radius must lie in (0, 1], got {radius}")));
        }
        let step = 2.0 * PI / n as f64;
        let mut values = Vec::with_capacity(n);
        for k in 0..n {
            let theta = offset + step * k as f64;
            let v = f(Complex64::from_polar(radius, theta));
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::SingularSample { radius, angle: theta });
            }
            values.push(v);
        }
        Ok(CircleSamples { radius, offset, values })
    }

    /// Half-step offset grid; on a non-finite sample retries once at a quarter step.
    pub fn sample_offset<F: Fn(Complex64) -> Complex64>(f: F, radius: f64, n: usize) -> Result<Self> {
        let step = 2.0 * PI / n.max(1) as f64;
        match Self::sample(&f, radius, n, 0.5 * step) {
            Err(Error::SingularSample { .. }) => Self::sample(&f, radius, n, 0.25 * step),
            other => other,
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mobius_examples() {
        let z = c(0.3, -0.4);
        assert_eq!(mobius_eval(DiscPoint::origin(), z), -z);
        let a = DiscPoint::new(c(0.2, 0.5)).unwrap();
        assert_eq!(mobius_eval(a, c(0.0, 0.0)), a.value());
        let w = mobius_eval(DiscPoint::new(c(0.5, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((w - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(DiscPoint::new(c(1.0, 0.0)).is_err());
        assert!(DiscPoint::polar(1.0, 0.3).is_err());
    }

    #[test]
    fn psi_examples() {
        let a = DiscPoint::new(c(0.4, -0.3)).unwrap();
        let z = c(0.1, 0.7);
        assert!((psi_eval(1.0, a, z).unwrap() - z).norm() < 1e-15);
        assert!((psi_eval(0.3, DiscPoint::origin(), z).unwrap() - z * 0.3).norm() < 1e-15);
        let half = DiscPoint::new(c(0.5, 0.0)).unwrap();
        assert!(psi_eval(0.5, half, c(0.0, 0.0)).unwrap().norm() < 1e-16);
        assert!(psi_eval(0.0, half, z).is_err());
        assert!(psi_eval(1.5, half, z).is_err());
    }

    #[test]
    fn mobius_involution_on_grid() {
        for i in 0..20 {
            let r = 0.95 * i as f64 / 19.0;
            for j in 0..16 {
                let a = DiscPoint::polar(r, j as f64 * 0.4).unwrap();
                for k in 0..16 {
                    let z = Complex64::from_polar(k as f64 / 15.0, 0.37 * k as f64);
                    let back = mobius_eval(a, mobius_eval(a, z));
                    assert!((back - z).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn circle_samples_reject_bad_counts_and_singularities() {
        assert!(CircleSamples::sample(|z| z, 1.0, 12, 0.0).is_err());
        let sing = CircleSamples::sample(|z| -(c(1.0, 0.0) - z).ln(), 1.0, 8, 0.0);
        assert!(matches!(sing, Err(Error::SingularSample { .. })));
        let ok = CircleSamples::sample_offset(|z| -(c(1.0, 0.0) - z).ln(), 1.0, 8).unwrap();
        assert_eq!(ok.len(), 8);
    }

    proptest! {
        #[test]
        fn boundary_is_preserved(r in 0.0f64..0.999, phi in 0.0f64..6.3, theta in 0.0f64..6.3) {
            let a = DiscPoint::polar(r, phi).unwrap();
            let w = mobius_eval(a, Complex64::from_polar(1.0, theta));
            prop_assert!((w.norm() - 1.0).abs() < 1e-12);
        }
    }
}
