use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{DiscPoint, TaylorPoly};
use crate::error::{invalid, Error, Result};
use crate::quadrature::Feature;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// An analytic function on the disc with closed-form value, derivative and
/// Maclaurin coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    /// g(z) = z
    Identity,
    /// g(z) = −log(1 − z)
    Cesaro,
    /// f(z) = log(1 − ū z), |u| ≤ 1
    LogKernel { u: Complex64 },
    /// f_a(z) = [(1 − |a|²)/(1 − āz)²]^{1/p}
    HpTest { a: DiscPoint, p: f64 },
    /// z^k
    Power { k: u32 },
    /// Exact polynomial.
    Polynomial(TaylorPoly),
    /// Σ_{k=1}^{terms} k^{−exponent} z^{base^k}
    Lacunary { base: u32, exponent: f64, terms: u32 },
    /// g(ρz) with |ρ| ≤ 1 (dilation and rotation)
    Dilate { inner: Box<Symbol>, factor: Complex64 },
    Scaled { c: Complex64, inner: Box<Symbol> },
    Sum(Vec<Symbol>),
    /// Truncation of an infinite series; only the coefficients are known.
    TaylorOnly(TaylorPoly),
}

impl Symbol {
    pub fn constant(c: Complex64) -> Symbol {
        Symbol::Polynomial(TaylorPoly::from_vec(vec![c]))
    }

    pub fn log_kernel(u: Complex64) -> Result<Symbol> {
        if !(u.re.is_finite() && u.im.is_finite()) || u.norm() > 1.0 {
            return Err(invalid(format!("log_kernel needs |u| <= 1, got {u}")));
        }
        Ok(Symbol::LogKernel { u })
    }

    pub fn hp_test(a: DiscPoint, p: f64) -> Result<Symbol> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(invalid(format!("hp_test needs p > 0, got {p}")));
        }
        Ok(Symbol::HpTest { a, p })
    }

    pub fn lacunary(base: u32, exponent: f64, terms: u32) -> Result<Symbol> {
        if base < 2 {
            return Err(invalid("lacunary base must be >= 2"));
        }
        if !exponent.is_finite() || terms == 0 {
            return Err(invalid("lacunary needs a finite exponent and at least one term"));
        }
        if (base as f64).powi(terms as i32) > u32::MAX as f64 {
            return Err(invalid("lacunary degree base^terms exceeds 2^32"));
        }
        Ok(Symbol::Lacunary { base, exponent, terms })
    }

    pub fn dilate(inner: Symbol, r: f64) -> Result<Symbol> {
        Self::dilate_rotate(inner, r, 0.0)
    }

    /// g(r e^{iφ} z).
    pub fn dilate_rotate(inner: Symbol, r: f64, phi: f64) -> Result<Symbol> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(invalid(format!("dilation radius must lie in (0, 1], got {r}")));
        }
        Ok(Symbol::Dilate {
            inner: Box::new(inner),
            factor: Complex64::from_polar(r, phi),
        })
    }

    pub fn scaled(self, c: Complex64) -> Symbol {
        Symbol::Scaled { c, inner: Box::new(self) }
    }

    /// `self − other` as a closed-form sum.
    pub fn minus(self, other: Symbol) -> Symbol {
        Symbol::Sum(vec![self, other.scaled(-ONE)])
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Symbol::Identity => z,
            Symbol::Cesaro => -(ONE - z).ln(),
            Symbol::LogKernel { u } => (ONE - u.conj() * z).ln(),
            Symbol::HpTest { a, p } => {
                let base = Complex64::new(a.one_minus_mod_sq().ln(), 0.0)
                    - (ONE - a.value().conj() * z).ln() * 2.0;
                (base / *p).exp()
            }
            Symbol::Power { k } => z.powu(*k),
            Symbol::Polynomial(p) | Symbol::TaylorOnly(p) => p.eval(z),
            Symbol::Lacunary { base, exponent, terms } => {
                let mut w = z;
                let mut sum = ZERO;
                for k in 1..=*terms {
                    w = w.powu(*base);
                    sum += w * (k as f64).powf(-exponent);
                }
                sum
            }
            Symbol::Dilate { inner, factor } => inner.eval(factor * z),
            Symbol::Scaled { c, inner } => c * inner.eval(z),
            Symbol::Sum(terms) => terms.iter().map(|t| t.eval(z)).sum(),
        }
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        match self {
            Symbol::Identity => ONE,
            Symbol::Cesaro => ONE / (ONE - z),
            Symbol::LogKernel { u } => -u.conj() / (ONE - u.conj() * z),
            Symbol::HpTest { a, p } => {
                let ab = a.value().conj();
                self.eval(z) * ab * (2.0 / p) / (ONE - ab * z)
            }
            Symbol::Power { k } => match k {
                0 => ZERO,
                k => z.powu(k - 1) * *k as f64,
            },
            Symbol::Polynomial(p) | Symbol::TaylorOnly(p) => p.derivative().eval(z),
            Symbol::Lacunary { base, exponent, terms } => {
                let mut n: u64 = 1;
                let mut sum = ZERO;
                for k in 1..=*terms {
                    n *= *base as u64;
                    sum += z.powu((n - 1) as u32) * (n as f64 * (k as f64).powf(-exponent));
                }
                sum
            }
            Symbol::Dilate { inner, factor } => factor * inner.deriv(factor * z),
            Symbol::Scaled { c, inner } => c * inner.deriv(z),
            Symbol::Sum(terms) => terms.iter().map(|t| t.deriv(z)).sum(),
        }
    }

    /// Maclaurin coefficients through `z^n`.
    pub fn taylor(&self, n: usize) -> TaylorPoly {
        let mut c = vec![ZERO; n + 1];
        match self {
            Symbol::Identity => {
                if n >= 1 {
                    c[1] = ONE;
                }
            }
            Symbol::Cesaro => {
                for (k, ck) in c.iter_mut().enumerate().skip(1) {
                    *ck = Complex64::new(1.0 / k as f64, 0.0);
                }
            }
            Symbol::LogKernel { u } => {
                let ub = u.conj();
                let mut pow = ONE;
                for (k, ck) in c.iter_mut().enumerate().skip(1) {
                    pow *= ub;
                    *ck = -pow / k as f64;
                }
            }
            Symbol::HpTest { a, p } => {
                // (1 − āz)^{−2/p} = Σ (2/p)_k/k! ā^k z^k
                let ab = a.value().conj();
                let s = 2.0 / p;
                let mut term = Complex64::new(a.one_minus_mod_sq().powf(1.0 / p), 0.0);
                c[0] = term;
                for (k, ck) in c.iter_mut().enumerate().skip(1) {
                    term = term * ab * ((s + k as f64 - 1.0) / k as f64);
                    *ck = term;
                }
            }
            Symbol::Power { k } => {
                if (*k as usize) <= n {
                    c[*k as usize] = ONE;
                }
            }
            Symbol::Polynomial(p) | Symbol::TaylorOnly(p) => return p.truncate(n),
            Symbol::Lacunary { .. } => {
                for (deg, coef) in self.sparse().unwrap() {
                    if (deg as usize) <= n {
                        c[deg as usize] += coef;
                    }
                }
            }
            Symbol::Dilate { inner, factor } => {
                let t = inner.taylor(n);
                let mut pow = ONE;
                for (ck, &tk) in c.iter_mut().zip(t.coeffs()) {
                    *ck = tk * pow;
                    pow *= factor;
                }
            }
            Symbol::Scaled { c: s, inner } => return inner.taylor(n).scale(*s),
            Symbol::Sum(terms) => {
                return terms
                    .iter()
                    .fold(TaylorPoly::zero().truncate(n), |acc, t| &acc + &t.taylor(n))
            }
        }
        TaylorPoly::from_vec(c)
    }

    /// Boundary points where the closed form is singular or sharply peaked.
    pub fn features(&self) -> Vec<Feature> {
        match self {
            Symbol::Cesaro => vec![Feature::singular(0.0)],
            Symbol::LogKernel { u } => {
                let m = u.norm();
                if m == 0.0 {
                    vec![]
                } else {
                    vec![Feature { angle: u.arg(), width: 1.0 - m }]
                }
            }
            Symbol::HpTest { a, .. } => {
                if a.modulus() == 0.0 {
                    vec![]
                } else {
                    vec![Feature { angle: a.arg(), width: 1.0 - a.modulus() }]
                }
            }
            Symbol::Dilate { inner, factor } => inner
                .features()
                .into_iter()
                .map(|f| Feature {
                    angle: f.angle - factor.arg(),
                    width: f.width + (1.0 - factor.norm()),
                })
                .collect(),
            Symbol::Scaled { inner, .. } => inner.features(),
            Symbol::Sum(terms) => terms.iter().flat_map(|t| t.features()).collect(),
            _ => vec![],
        }
    }

    pub fn singular_angles(&self) -> Vec<f64> {
        self.features()
            .into_iter()
            .filter(Feature::is_singular)
            .map(|f| f.angle)
            .collect()
    }

    /// Highest frequency that boundary quadratures must resolve.
    pub fn bandwidth(&self) -> f64 {
        match self {
            Symbol::Identity => 1.0,
            Symbol::Power { k } => *k as f64,
            Symbol::Polynomial(p) | Symbol::TaylorOnly(p) => p.degree() as f64,
            Symbol::Lacunary { base, terms, .. } => (*base as f64).powi(*terms as i32),
            Symbol::Dilate { inner, factor } => {
                let decay = 1.0 - factor.norm();
                if decay > 0.0 {
                    inner.bandwidth().min(40.0 / decay)
                } else {
                    inner.bandwidth()
                }
            }
            Symbol::Scaled { inner, .. } => inner.bandwidth(),
            Symbol::Sum(terms) => terms.iter().map(|t| t.bandwidth()).fold(0.0, f64::max),
            _ => 0.0,
        }
    }

    /// Nonzero Maclaurin coefficients as `(power, coefficient)` when the
    /// symbol is a finite (possibly very sparse) polynomial.
    pub fn sparse(&self) -> Option<Vec<(u64, Complex64)>> {
        let mut out: Vec<(u64, Complex64)> = match self {
            Symbol::Identity => vec![(1, ONE)],
            Symbol::Power { k } => vec![(*k as u64, ONE)],
            Symbol::Polynomial(p) | Symbol::TaylorOnly(p) => p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != ZERO)
                .map(|(k, &c)| (k as u64, c))
                .collect(),
            Symbol::Lacunary { base, exponent, terms } => {
                let mut n = 1u64;
                (1..=*terms)
                    .map(|k| {
                        n *= *base as u64;
                        (n, Complex64::new((k as f64).powf(-exponent), 0.0))
                    })
                    .collect()
            }
            Symbol::Dilate { inner, factor } => inner
                .sparse()?
                .into_iter()
                .map(|(n, c)| (n, c * factor.powu(n as u32)))
                .collect(),
            Symbol::Scaled { c, inner } => inner.sparse()?.into_iter().map(|(n, v)| (n, v * c)).collect(),
            Symbol::Sum(terms) => {
                let mut all = Vec::new();
                for t in terms {
                    all.extend(t.sparse()?);
                }
                all
            }
            _ => return None,
        };
        out.sort_by_key(|(n, _)| *n);
        let mut merged: Vec<(u64, Complex64)> = Vec::with_capacity(out.len());
        for (n, c) in out.drain(..) {
            match merged.last_mut() {
                Some((m, acc)) if *m == n => *acc += c,
                _ => merged.push((n, c)),
            }
        }
        merged.retain(|(_, c)| *c != ZERO);
        Some(merged)
    }

    /// Degree of the underlying truncation when only Taylor data is trustworthy.
    pub fn taylor_only_degree(&self) -> Option<usize> {
        match self {
            Symbol::TaylorOnly(p) => Some(p.degree()),
            Symbol::Dilate { inner, .. } | Symbol::Scaled { inner, .. } => inner.taylor_only_degree(),
            Symbol::Sum(terms) => terms.iter().filter_map(|t| t.taylor_only_degree()).min(),
            _ => None,
        }
    }

    /// Registry name of the outermost constructor.
    pub fn name(&self) -> &'static str {
        match self {
            Symbol::Identity => "identity",
            Symbol::Cesaro => "cesaro",
            Symbol::LogKernel { .. } => "log_kernel",
            Symbol::HpTest { .. } => "hp_test",
            Symbol::Power { .. } => "power",
            Symbol::Polynomial(_) => "polynomial",
            Symbol::Lacunary { .. } => "lacunary",
            Symbol::Dilate { .. } => "dilate",
            Symbol::Scaled { .. } => "scaled",
            Symbol::Sum(_) => "sum",
            Symbol::TaylorOnly(_) => "taylor",
        }
    }
}

/// `{ "name": ..., "params": {...} }` as accepted on the command line and in config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub params: Value,
    /// Shorthand for a raw polynomial record.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Value>,
}

impl SymbolSpec {
    pub fn parse(text: &str) -> Result<Symbol> {
        let spec: SymbolSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.build()
    }

    pub fn build(&self) -> Result<Symbol> {
        match (&self.name, &self.coeffs) {
            (Some(name), _) => make_symbol(name, &self.params),
            (None, Some(coeffs)) => make_symbol("polynomial", &serde_json::json!({ "coeffs": coeffs })),
            (None, None) => Err(Error::Parse("symbol record needs a name or coeffs".into())),
        }
    }
}

fn complex_value(v: &Value, what: &str) -> Result<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(parts) if parts.len() == 2 => {
            let re = parts[0].as_f64();
            let im = parts[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Error::Parse(format!("{what}: expected [re, im]"))),
            }
        }
        _ => Err(Error::Parse(format!("{what}: expected a number or [re, im]"))),
    }
}

fn param<'a>(params: &'a Value, key: &str) -> Option<&'a Value> {
    params.get(key)
}

fn real_param(params: &Value, key: &str, default: Option<f64>) -> Result<f64> {
    match param(params, key) {
        Some(v) => v
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("parameter {key} must be a number"))),
        None => default.ok_or_else(|| Error::Parse(format!("missing parameter {key}"))),
    }
}

fn complex_param(params: &Value, key: &str, default: Option<Complex64>) -> Result<Complex64> {
    match param(params, key) {
        Some(v) => complex_value(v, key),
        None => default.ok_or_else(|| Error::Parse(format!("missing parameter {key}"))),
    }
}

fn uint_param(params: &Value, key: &str, default: Option<u32>) -> Result<u32> {
    match param(params, key) {
        Some(v) => v
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| Error::Parse(format!("parameter {key} must be a non-negative integer"))),
        None => default.ok_or_else(|| Error::Parse(format!("missing parameter {key}"))),
    }
}

fn coeff_list(v: &Value) -> Result<Vec<Complex64>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("coeffs must be an array".into()))?
        .iter()
        .map(|c| complex_value(c, "coeffs"))
        .collect()
}

fn nested(params: &Value, key: &str) -> Result<Symbol> {
    let inner = param(params, key).ok_or_else(|| Error::Parse(format!("missing parameter {key}")))?;
    match inner {
        Value::String(name) => make_symbol(name, &Value::Null),
        other => serde_json::from_value::<SymbolSpec>(other.clone())
            .map_err(|e| Error::Parse(e.to_string()))?
            .build(),
    }
}

/// Builds a symbol from its registry name and parameter record.
pub fn make_symbol(name: &str, params: &Value) -> Result<Symbol> {
    let params = if params.is_null() { &Value::Object(Default::default()) } else { params };
    match name {
        "identity" => Ok(Symbol::Identity),
        "cesaro" => Ok(Symbol::Cesaro),
        "constant" => Ok(Symbol::constant(complex_param(params, "c", None)?)),
        "log_kernel" => Symbol::log_kernel(complex_param(params, "u", None)?),
        "hp_test" => Symbol::hp_test(
            DiscPoint::new(complex_param(params, "a", None)?)?,
            real_param(params, "p", Some(2.0))?,
        ),
        "power" => Ok(Symbol::Power { k: uint_param(params, "k", None)? }),
        "polynomial" => {
            let c = coeff_list(param(params, "coeffs").ok_or_else(|| Error::Parse("missing parameter coeffs".into()))?)?;
            Ok(Symbol::Polynomial(TaylorPoly::new(c)?))
        }
        "taylor" => {
            let c = coeff_list(param(params, "coeffs").ok_or_else(|| Error::Parse("missing parameter coeffs".into()))?)?;
            Ok(Symbol::TaylorOnly(TaylorPoly::new(c)?))
        }
        "lacunary" => Symbol::lacunary(
            uint_param(params, "base", Some(2))?,
            real_param(params, "exponent", Some(1.5))?,
            uint_param(params, "terms", Some(24))?,
        ),
        "dilate" => Symbol::dilate_rotate(
            nested(params, "inner")?,
            real_param(params, "r", None)?,
            real_param(params, "angle", Some(0.0))?,
        ),
        "scaled" => Ok(nested(params, "inner")?.scaled(complex_param(params, "c", None)?)),
        "sum" => {
            let terms = param(params, "terms")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("sum needs a terms array".into()))?;
            let built = terms
                .iter()
                .map(|t| match t {
                    Value::String(n) => make_symbol(n, &Value::Null),
                    other => serde_json::from_value::<SymbolSpec>(other.clone())
                        .map_err(|e| Error::Parse(e.to_string()))?
                        .build(),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Symbol::Sum(built))
        }
        other => Err(Error::UnsupportedSymbol(other.to_string())),
    }
}

/// The fixed set of symbols that registry-wide invariants sweep over.
pub fn registry() -> Vec<(&'static str, Symbol)> {
    vec![
        ("identity", Symbol::Identity),
        ("cesaro", Symbol::Cesaro),
        ("power3", Symbol::Power { k: 3 }),
        (
            "polynomial",
            Symbol::Polynomial(TaylorPoly::from_real(&[1.0, 1.0, 0.3])),
        ),
        ("lacunary10", Symbol::lacunary(2, 1.5, 10).unwrap()),
        (
            "log_kernel",
            Symbol::log_kernel(Complex64::new(0.6, 0.3)).unwrap(),
        ),
        (
            "hp_test",
            Symbol::hp_test(DiscPoint::new(Complex64::new(0.0, 0.5)).unwrap(), 2.0).unwrap(),
        ),
        ("dilated_cesaro", Symbol::dilate(Symbol::Cesaro, 0.9).unwrap()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cesaro_taylor() {
        let t = Symbol::Cesaro.taylor(3);
        let expect = [0.0, 1.0, 0.5, 1.0 / 3.0];
        for (a, b) in t.coeffs().iter().zip(expect) {
            assert!((a - c(b, 0.0)).norm() < 1e-16);
        }
        assert_eq!(Symbol::Cesaro.singular_angles(), vec![0.0]);
    }

    #[test]
    fn degenerate_parameters_give_constants() {
        let k = Symbol::log_kernel(c(0.0, 0.0)).unwrap();
        let t = Symbol::hp_test(DiscPoint::origin(), 1.0).unwrap();
        for z in [c(0.3, 0.2), c(-0.9, 0.1), c(0.0, 1.0)] {
            assert_eq!(k.eval(z), c(0.0, 0.0));
            assert!((t.eval(z) - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn registry_taylor_matches_closed_form() {
        for (label, s) in registry() {
            let t = s.taylor(1024);
            for j in 0..64 {
                let z = Complex64::from_polar(0.5, j as f64 * 0.098);
                let d = (t.eval(z) - s.eval(z)).norm();
                assert!(d < 1e-10, "{label}: {d}");
            }
        }
    }

    #[test]
    fn registry_derivatives_match_finite_differences() {
        let h = 1e-5;
        for (label, s) in registry() {
            for j in 0..16 {
                let z = Complex64::from_polar(0.2 + 0.04 * j as f64, 0.7 * j as f64 + 0.1);
                let fd = (s.eval(z + h) - s.eval(z - h)) / (2.0 * h);
                let d = s.deriv(z);
                let rel = (fd - d).norm() / d.norm().max(1e-3);
                assert!(rel < 1e-6, "{label} at {z}: {rel}");
            }
        }
    }

    #[test]
    fn hp_test_p2_coefficients() {
        let a = DiscPoint::new(c(0.3, 0.4)).unwrap();
        let s = Symbol::hp_test(a, 2.0).unwrap();
        let t = s.taylor(6);
        let scale = a.one_minus_mod_sq().sqrt();
        for (k, ck) in t.coeffs().iter().enumerate() {
            let expect = a.value().conj().powu(k as u32) * scale;
            assert!((ck - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn sparse_merges_and_dilates() {
        let s = Symbol::Sum(vec![Symbol::Identity, Symbol::Power { k: 1 }, Symbol::Power { k: 3 }]);
        assert_eq!(s.sparse().unwrap(), vec![(1, c(2.0, 0.0)), (3, c(1.0, 0.0))]);
        let d = Symbol::dilate(Symbol::Power { k: 2 }, 0.5).unwrap();
        assert_eq!(d.sparse().unwrap(), vec![(2, c(0.25, 0.0))]);
        assert!(Symbol::Cesaro.sparse().is_none());
        let lac = Symbol::lacunary(2, 1.5, 3).unwrap().sparse().unwrap();
        assert_eq!(lac.iter().map(|x| x.0).collect::<Vec<_>>(), vec![2, 4, 8]);
    }

    #[test]
    fn parses_records() {
        let p = SymbolSpec::parse(r#"{"name":"polynomial","params":{"coeffs":[[0,0],[1,0]]}}"#).unwrap();
        assert_eq!(p.eval(c(0.25, 0.5)), c(0.25, 0.5));
        let raw = SymbolSpec::parse(r#"{"coeffs":[[1,0],[0,2]]}"#).unwrap();
        assert_eq!(raw.eval(c(1.0, 0.0)), c(1.0, 2.0));
        let d = make_symbol("dilate", &json!({"inner": "cesaro", "r": 0.5})).unwrap();
        assert!((d.eval(c(1.0, 0.0)) - c(2f64.ln(), 0.0)).norm() < 1e-15);
        let k = make_symbol("log_kernel", &json!({"u": [0.5, 0.5]})).unwrap();
        assert!(matches!(k, Symbol::LogKernel { .. }));
        let sum = make_symbol("sum", &json!({"terms": ["identity", {"name": "power", "params": {"k": 2}}]})).unwrap();
        assert_eq!(sum.eval(c(2.0, 0.0)), c(6.0, 0.0));
    }

    #[test]
    fn rejects_bad_records() {
        assert!(matches!(make_symbol("bessel", &Value::Null), Err(Error::UnsupportedSymbol(_))));
        assert!(matches!(
            make_symbol("hp_test", &json!({"a": [1.0, 0.0]})),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            make_symbol("dilate", &json!({"inner": "cesaro", "r": 1.5})),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(make_symbol("power", &json!({})), Err(Error::Parse(_))));
        assert!(SymbolSpec::parse("{}").is_err());
    }
}
