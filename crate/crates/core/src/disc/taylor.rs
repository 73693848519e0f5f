use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{invalid, Result};

/// Truncated Maclaurin series; `coeffs[k]` multiplies `z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorPoly {
    coeffs: Vec<Complex64>,
}

impl TaylorPoly {
    /// Fails on NaN/Inf coefficients. An empty slice becomes the zero polynomial.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(invalid("Taylor coefficients must be finite"));
        }
        Ok(Self::from_vec(coeffs))
    }

    pub(crate) fn from_vec(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        TaylorPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_vec(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::from_vec(vec![])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> TaylorPoly {
        let d: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Self::from_vec(d)
    }

    /// Primitive vanishing at the origin.
    pub fn antiderivative(&self) -> TaylorPoly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k as f64 + 1.0)),
        );
        Self::from_vec(out)
    }

    /// Coefficients of `self · other` up to and including `z^degree`.
    pub fn cauchy_product(&self, other: &TaylorPoly, degree: usize) -> TaylorPoly {
        let mut out = vec![Complex64::new(0.0, 0.0); degree + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(degree + 1) {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::from_vec(out)
    }

    /// Truncates (or zero-pads) to exactly `degree + 1` coefficients.
    pub fn truncate(&self, degree: usize) -> TaylorPoly {
        let mut c = self.coeffs.clone();
        c.resize(degree + 1, Complex64::new(0.0, 0.0));
        Self::from_vec(c)
    }

    pub fn scale(&self, s: Complex64) -> TaylorPoly {
        Self::from_vec(self.coeffs.iter().map(|&c| c * s).collect())
    }

    fn zip_with(&self, other: &TaylorPoly, f: impl Fn(Complex64, Complex64) -> Complex64) -> TaylorPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Self::from_vec(
            (0..n)
                .map(|k| {
                    f(
                        *self.coeffs.get(k).unwrap_or(&zero),
                        *other.coeffs.get(k).unwrap_or(&zero),
                    )
                })
                .collect(),
        )
    }
}

impl Add for &TaylorPoly {
    type Output = TaylorPoly;
    fn add(self, rhs: &TaylorPoly) -> TaylorPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TaylorPoly {
    type Output = TaylorPoly;
    fn sub(self, rhs: &TaylorPoly) -> TaylorPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TaylorPoly {
    type Output = TaylorPoly;
    fn neg(self) -> TaylorPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &TaylorPoly {
    type Output = TaylorPoly;
    fn mul(self, rhs: Complex64) -> TaylorPoly {
        self.scale(rhs)
    }
}
