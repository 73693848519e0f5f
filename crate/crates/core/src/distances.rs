//! Radial ladders and the limsup proxies for `dist(g, VMOA)` and
//! `dist(g, LVMOA)`, assembled into essential-norm reports.
//!
//! A ladder samples a Möbius-centered quantity at `|a| = 1 − 2^{−j}` and keeps
//! the maximum over an angle grid at each rung. The distance proxy is the
//! largest of the final three rungs.

use serde::{Serialize, Serializer};

use crate::carleson::{log_carleson_ladder, WindowQuadrature};
use crate::disc::{DiscPoint, Symbol};
use crate::error::{invalid, Error, Result};
use crate::hardy::{equispaced, sweep, NormConfig, NormResult, SeminormGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LadderFlag {
    Converging,
    Diverging,
    Indeterminate,
}

/// Classifies the tail of a ladder.
///
/// Diverging: each of the last three steps grows by more than 10%.
/// Converging: every rung is zero, or each of the last three steps either does
/// not increase or changes the value by less than 5%.
pub fn divergence_check(values: &[f64]) -> LadderFlag {
    if values.iter().all(|&v| v == 0.0) {
        return LadderFlag::Converging;
    }
    if values.len() < 4 {
        return LadderFlag::Indeterminate;
    }
    let tail = &values[values.len() - 4..];
    let steps: Vec<(f64, f64)> = tail.windows(2).map(|w| (w[0], w[1])).collect();
    if steps.iter().all(|&(a, b)| a > 0.0 && b > 1.1 * a) {
        return LadderFlag::Diverging;
    }
    if steps.iter().all(|&(a, b)| b <= a || (b - a).abs() < 0.05 * a.abs()) {
        return LadderFlag::Converging;
    }
    LadderFlag::Indeterminate
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rung {
    pub level: f64,
    pub value: f64,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ladder {
    pub rungs: Vec<Rung>,
    pub tail_estimate: f64,
    pub flag: LadderFlag,
}

impl Ladder {
    pub fn new(rungs: Vec<Rung>) -> Result<Self> {
        if rungs.is_empty() {
            return Err(invalid("ladder needs at least one rung"));
        }
        let up = rungs.windows(2).all(|w| w[1].level > w[0].level);
        let down = rungs.windows(2).all(|w| w[1].level < w[0].level);
        if !(up || down) {
            return Err(invalid("ladder levels must be strictly monotone"));
        }
        let values: Vec<f64> = rungs.iter().map(|r| r.value).collect();
        let tail_estimate = values[values.len().saturating_sub(3)..].iter().copied().fold(0.0, f64::max);
        Ok(Ladder { flag: divergence_check(&values), tail_estimate, rungs })
    }

    pub fn values(&self) -> Vec<f64> {
        self.rungs.iter().map(|r| r.value).collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        let io = |e: csv::Error| Error::InvalidParameter(e.to_string());
        w.write_record(["level", "value", "angle"]).map_err(io)?;
        for r in &self.rungs {
            w.write_record([crate::format_float(r.level), crate::format_float(r.value), crate::format_float(r.angle)])
                .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    None,
    Lambda,
}

/// Settings shared by the distance estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistConfig {
    pub levels: u32,
    pub angles: usize,
    pub norm: NormConfig,
    pub window: WindowQuadrature,
}

impl Default for DistConfig {
    fn default() -> Self {
        DistConfig { levels: 10, angles: 64, norm: NormConfig::default(), window: WindowQuadrature::default() }
    }
}

impl DistConfig {
    pub fn with_levels(levels: u32) -> Self {
        DistConfig { levels, ..Default::default() }
    }
}

/// Deepest admissible level for a truncated-series symbol.
fn level_cap(g: &Symbol, kappa: f64) -> Option<u32> {
    g.taylor_only_degree()
        .map(|n| ((n as f64 / kappa).log2().floor().max(0.0)) as u32)
}

/// The ladder plus the grid sup over the same points.
fn ladder_with_sup(
    g: &Symbol,
    p: f64,
    levels: u32,
    angles: usize,
    weight: Weight,
    config: &NormConfig,
) -> Result<(Ladder, NormResult)> {
    if levels < 3 {
        return Err(invalid(format!("a ladder needs at least 3 levels, got {levels}")));
    }
    let mut depth = levels;
    if let Some(cap) = level_cap(g, config.kappa) {
        if cap < 3 {
            return Err(Error::Unresolved(format!(
                "truncation degree supports only {cap} ladder levels"
            )));
        }
        depth = depth.min(cap);
    }
    let grid = SeminormGrid::dyadic(depth, angles)?
        .with_singular_angles(g)
        .with_config(*config);
    let (rows, samples) = sweep(g, &grid, p, weight == Weight::Lambda)?;
    let rungs: Vec<Rung> = rows
        .iter()
        .map(|r| Rung { level: r.radius, value: r.value, angle: r.angle })
        .collect();
    let mut best = &rows[0];
    for r in &rows {
        if r.value > best.value {
            best = r;
        }
    }
    let sup = NormResult {
        value: best.value,
        degree_used: g.taylor_only_degree().unwrap_or(0),
        samples_used: samples,
        resolved: rows.iter().all(|r| r.resolved),
        argmax: DiscPoint::polar(best.radius, best.angle).ok(),
    };
    Ok((Ladder::new(rungs)?, sup))
}

/// Rung `j` is the angular max of the (optionally λ-weighted) centered norm at
/// `|a| = 1 − 2^{−j}`, `j = 1..=levels`.
pub fn radial_ladder(
    g: &Symbol,
    p: f64,
    levels: u32,
    angles: usize,
    weight: Weight,
    config: &NormConfig,
) -> Result<Ladder> {
    ladder_with_sup(g, p, levels, angles, weight, config).map(|(l, _)| l)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistEstimate {
    pub proxy: f64,
    pub ladder: Ladder,
    pub seminorm: NormResult,
}

fn gate_bmoa(seminorm: &NormResult) -> Result<()> {
    if !seminorm.resolved || !seminorm.value.is_finite() {
        return Err(Error::Unresolved("BMOA seminorm is not resolved on the ladder grid".into()));
    }
    Ok(())
}

/// Limsup proxy for `dist(g, VMOA)` from the unweighted H^p ladder.
pub fn dist_vmoa(g: &Symbol, p: f64, config: &DistConfig) -> Result<DistEstimate> {
    let (ladder, seminorm) = ladder_with_sup(g, p, config.levels, config.angles, Weight::None, &config.norm)?;
    gate_bmoa(&seminorm)?;
    Ok(DistEstimate { proxy: ladder.tail_estimate, ladder, seminorm })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossCheck {
    pub alpha_hat_sqrt: f64,
    pub ratio: f64,
}

impl CrossCheck {
    fn new(proxy: f64, alpha_hat: f64) -> Self {
        let s = alpha_hat.sqrt();
        let ratio = if s == 0.0 && proxy == 0.0 { 1.0 } else { proxy / s };
        CrossCheck { alpha_hat_sqrt: s, ratio }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LvmoaEstimate {
    pub proxy: f64,
    pub ladder: Ladder,
    pub seminorm: NormResult,
    pub cross_check: CrossCheck,
}

/// Carleson-side estimate `√α̂` on arcs of measure `2^{−j}`, `j = 1..=levels`.
pub fn carleson_alpha_hat(g: &Symbol, config: &DistConfig) -> Result<f64> {
    let sizes: Vec<f64> = (1..=config.levels).map(|j| 0.5f64.powi(j as i32)).collect();
    let ladder = log_carleson_ladder(g, &sizes, &equispaced(config.angles), &config.window)?;
    Ok(ladder.alpha_hat)
}

fn lambda_ladder(g: &Symbol, config: &DistConfig) -> Result<(Ladder, NormResult)> {
    ladder_with_sup(g, 2.0, config.levels, config.angles, Weight::Lambda, &config.norm)
}

fn gate_lmoa(ladder: &Ladder, seminorm: &NormResult) -> Result<()> {
    if ladder.flag == LadderFlag::Diverging {
        return Err(Error::NotInLmoa(format!(
            "λ-weighted ladder grows by more than 10% at each of its last rungs (last value {:.6e})",
            ladder.rungs.last().map(|r| r.value).unwrap_or(0.0)
        )));
    }
    if !seminorm.resolved || !seminorm.value.is_finite() {
        return Err(Error::Unresolved("LMOA seminorm is not resolved on the ladder grid".into()));
    }
    Ok(())
}

/// Limsup proxy for `dist(g, LVMOA)` from the λ-weighted H² ladder, cross-checked
/// against the logarithmic Carleson ladder.
pub fn dist_lvmoa(g: &Symbol, config: &DistConfig) -> Result<LvmoaEstimate> {
    let (ladder, seminorm) = lambda_ladder(g, config)?;
    gate_lmoa(&ladder, &seminorm)?;
    let alpha_hat = carleson_alpha_hat(g, config)?;
    Ok(LvmoaEstimate {
        proxy: ladder.tail_estimate,
        cross_check: CrossCheck::new(ladder.tail_estimate, alpha_hat),
        ladder,
        seminorm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Space {
    Hp(f64),
    Bmoa,
    Vmoa,
}

impl Space {
    pub fn parse(text: &str) -> Result<Space> {
        let t = text.trim();
        match t.to_ascii_lowercase().as_str() {
            "bmoa" => return Ok(Space::Bmoa),
            "vmoa" => return Ok(Space::Vmoa),
            _ => {}
        }
        let num = t
            .strip_prefix("H^")
            .or_else(|| t.strip_prefix("h^"))
            .or_else(|| t.strip_prefix('H'))
            .or_else(|| t.strip_prefix('h'))
            .ok_or_else(|| invalid(format!("unknown space '{text}'")))?;
        let p: f64 = num.parse().map_err(|_| invalid(format!("unknown space '{text}'")))?;
        if !(p > 0.0 && p.is_finite()) {
            return Err(invalid(format!("p must be positive, got {p}")));
        }
        Ok(Space::Hp(p))
    }
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Space::Hp(p) => write!(f, "H^{p}"),
            Space::Bmoa => f.write_str("BMOA"),
            Space::Vmoa => f.write_str("VMOA"),
        }
    }
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    CompactLike,
    NonCompactLike,
    NotBoundedLike,
    Indeterminate,
}

/// Which equivalence the proxy instantiates: the Hardy-space one (`Thm1.1`) or
/// the BMOA/VMOA one (`Thm1.2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Equivalence {
    #[serde(rename = "Thm1.1")]
    Hardy,
    #[serde(rename = "Thm1.2")]
    Bmoa,
}

/// Compact-like below `0.01·scale`, non-compact-like above `0.1·scale`,
/// with `scale = max(seminorm, 1)`.
pub fn classify(proxy: f64, seminorm: f64) -> Classification {
    let scale = seminorm.max(1.0);
    if proxy < 0.01 * scale {
        Classification::CompactLike
    } else if proxy > 0.1 * scale {
        Classification::NonCompactLike
    } else {
        Classification::Indeterminate
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EssentialNormReport {
    pub space: Space,
    pub dist_proxy: f64,
    pub classification: Classification,
    pub equivalence: Equivalence,
    pub ladder: Vec<Rung>,
    pub cross_check: Option<CrossCheck>,
    pub weak_essential_proxy: Option<f64>,
    pub seminorm: f64,
    pub flag: LadderFlag,
    pub detail: Option<String>,
}

/// Essential-norm proxy for `T_g` on the given space.
///
/// H^p targets use the unweighted H² ladder; BMOA and VMOA targets use the
/// λ-weighted one. When the membership gate fails the report is
/// `not-bounded-like` and carries the ladder that failed it.
pub fn essential_norm_report(g: &Symbol, space: Space, config: &DistConfig) -> Result<EssentialNormReport> {
    match space {
        Space::Hp(p) => {
            if !(p > 0.0 && p.is_finite()) {
                return Err(invalid(format!("p must be positive, got {p}")));
            }
            let (ladder, sup) = ladder_with_sup(g, 2.0, config.levels, config.angles, Weight::None, &config.norm)?;
            let gate = gate_bmoa(&sup);
            let weak = (p == 1.0).then_some(ladder.tail_estimate);
            Ok(assemble(space, Equivalence::Hardy, ladder, &sup, gate, None, weak))
        }
        Space::Bmoa | Space::Vmoa => {
            let (ladder, sup) = lambda_ladder(g, config)?;
            let gate = gate_lmoa(&ladder, &sup);
            let cross = match gate {
                Ok(()) => Some(CrossCheck::new(ladder.tail_estimate, carleson_alpha_hat(g, config)?)),
                Err(_) => None,
            };
            let weak = Some(ladder.tail_estimate);
            Ok(assemble(space, Equivalence::Bmoa, ladder, &sup, gate, cross, weak))
        }
    }
}

fn assemble(
    space: Space,
    equivalence: Equivalence,
    ladder: Ladder,
    sup: &NormResult,
    gate: Result<()>,
    cross_check: Option<CrossCheck>,
    weak_essential_proxy: Option<f64>,
) -> EssentialNormReport {
    let proxy = ladder.tail_estimate;
    let (classification, detail, weak) = match gate {
        Ok(()) => (classify(proxy, sup.value), None, weak_essential_proxy),
        Err(e) => (Classification::NotBoundedLike, Some(e.to_string()), None),
    };
    EssentialNormReport {
        space,
        dist_proxy: proxy,
        classification,
        equivalence,
        flag: ladder.flag,
        ladder: ladder.rungs,
        cross_check,
        weak_essential_proxy: weak,
        seminorm: sup.value,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn quick() -> DistConfig {
        DistConfig { angles: 8, norm: NormConfig::with_samples(1024), ..Default::default() }
    }

    #[test]
    fn divergence_rule() {
        assert_eq!(divergence_check(&[0.0; 5]), LadderFlag::Converging);
        assert_eq!(divergence_check(&[1.0, 1.2, 1.5, 1.8, 2.2]), LadderFlag::Diverging);
        assert_eq!(divergence_check(&[1.0, 0.5, 0.25, 0.125]), LadderFlag::Converging);
        assert_eq!(divergence_check(&[1.0, 1.01, 1.02, 1.03]), LadderFlag::Converging);
        assert_eq!(divergence_check(&[1.0, 1.08, 1.2, 1.3]), LadderFlag::Indeterminate);
        assert_eq!(divergence_check(&[1.0, 2.0]), LadderFlag::Indeterminate);
    }

    #[test]
    fn ladder_invariants() {
        let r = |l, v| Rung { level: l, value: v, angle: 0.0 };
        let l = Ladder::new(vec![r(0.5, 3.0), r(0.75, 1.0), r(0.875, 2.0), r(0.9375, 0.5)]).unwrap();
        assert_eq!(l.tail_estimate, 2.0);
        assert!(Ladder::new(vec![r(0.5, 1.0), r(0.5, 1.0)]).is_err());
        assert!(l.to_csv().unwrap().starts_with("level,value,angle\n"));
    }

    #[test]
    fn constant_ladder_is_zero() {
        let k = Symbol::constant(Complex64::new(1.0, -2.0));
        let l = radial_ladder(&k, 2.0, 10, 8, Weight::None, &NormConfig::default()).unwrap();
        assert!(l.rungs.iter().all(|r| r.value == 0.0));
        assert_eq!(l.flag, LadderFlag::Converging);
        assert_eq!(dist_vmoa(&k, 2.0, &quick()).unwrap().proxy, 0.0);
        assert!(radial_ladder(&k, 2.0, 2, 8, Weight::None, &NormConfig::default()).is_err());
    }

    #[test]
    fn identity_ladder_closed_form() {
        let l = radial_ladder(&Symbol::Identity, 2.0, 12, 8, Weight::None, &NormConfig::default()).unwrap();
        for (j, r) in l.rungs.iter().enumerate() {
            let s: f64 = 1.0 - 0.5f64.powi(j as i32 + 1);
            assert!((r.value - (1.0 - s * s).sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn cesaro_ladder_rises_toward_limit() {
        let l = radial_ladder(&Symbol::Cesaro, 2.0, 10, 8, Weight::None, &NormConfig::default()).unwrap();
        assert!(l.rungs.windows(2).all(|w| w[1].value > w[0].value));
        let last = l.rungs.last().unwrap();
        assert_eq!(last.angle, 0.0);
        let limit = std::f64::consts::PI / 2f64.sqrt();
        assert!((l.tail_estimate - limit).abs() < 0.05 * limit, "{}", l.tail_estimate);
    }

    #[test]
    fn cesaro_is_not_in_lmoa() {
        let e = dist_lvmoa(&Symbol::Cesaro, &quick()).unwrap_err();
        assert_eq!(e.kind(), "not-in-lmoa");
        let rep = essential_norm_report(&Symbol::Cesaro, Space::Bmoa, &quick()).unwrap();
        assert_eq!(rep.classification, Classification::NotBoundedLike);
        assert!(!rep.ladder.is_empty());
    }

    #[test]
    fn cesaro_on_h1_is_non_compact_like() {
        let rep = essential_norm_report(&Symbol::Cesaro, Space::Hp(1.0), &quick()).unwrap();
        assert_eq!(rep.classification, Classification::NonCompactLike);
        assert_eq!(rep.weak_essential_proxy, Some(rep.dist_proxy));
        assert_eq!(rep.equivalence, Equivalence::Hardy);
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["equivalence"], "Thm1.1");
        assert_eq!(json["space"], "H^1");
        assert_eq!(json["cross_check"], serde_json::Value::Null);
    }

    #[test]
    fn classification_thresholds() {
        assert_eq!(classify(0.009, 0.5), Classification::CompactLike);
        assert_eq!(classify(0.05, 0.5), Classification::Indeterminate);
        assert_eq!(classify(0.2, 1.5), Classification::NonCompactLike);
        assert_eq!(classify(0.015, 2.0), Classification::CompactLike);
    }

    #[test]
    fn space_parsing() {
        assert_eq!(Space::parse("H^2").unwrap(), Space::Hp(2.0));
        assert_eq!(Space::parse("h1").unwrap(), Space::Hp(1.0));
        assert_eq!(Space::parse("bmoa").unwrap(), Space::Bmoa);
        assert!(Space::parse("H^-1").is_err());
        assert!(Space::parse("L2").is_err());
        assert_eq!(Space::Hp(0.5).to_string(), "H^0.5");
    }

    #[test]
    fn truncated_series_caps_depth() {
        let t = Symbol::TaylorOnly(Symbol::Cesaro.taylor(1000));
        let l = radial_ladder(&t, 2.0, 10, 4, Weight::None, &NormConfig::with_samples(1024)).unwrap();
        assert_eq!(l.rungs.len(), 6);
        let small = Symbol::TaylorOnly(Symbol::Cesaro.taylor(50));
        assert_eq!(radial_ladder(&small, 2.0, 10, 4, Weight::None, &NormConfig::default()).unwrap_err().kind(), "unresolved");
    }
}
