//! Gauss–Legendre rules and graded composite panels.
//!
//! Every boundary or radial integral in the crate is a composite Gauss–Legendre
//! sum over panels whose breakpoints are refined geometrically toward a list of
//! [`Feature`]s: boundary singularities (width 0) or sharp but smooth bumps of a
//! known width. Nodes never sit on a breakpoint, so integrable singularities
//! placed at breakpoints are never sampled.

use std::f64::consts::PI;

/// Smallest panel half-width used when grading toward a true singularity.
pub const MIN_SCALE: f64 = 1e-13;

/// A point on an interval (or the circle) where the integrand varies on scale `width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feature {
    pub angle: f64,
    pub width: f64,
}

impl Feature {
    pub fn singular(angle: f64) -> Self {
        Feature { angle, width: 0.0 }
    }

    pub fn is_singular(&self) -> bool {
        self.width == 0.0
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integral of `f` over `[lo, hi]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Pushes the mapped nodes and weights of `[lo, hi]` onto the given buffers.
    fn push_mapped(&self, lo: f64, hi: f64, nodes: &mut Vec<f64>, weights: &mut Vec<f64>) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            nodes.push(mid + half * x);
            weights.push(w * half);
        }
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A fixed list of nodes and weights in one variable.
#[derive(Debug, Clone, Default)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Composite rule over the panels delimited by `breaks` (sorted).
    pub fn from_breaks(breaks: &[f64], gl: &GaussLegendre) -> Rule {
        let mut rule = Rule::default();
        for pair in breaks.windows(2) {
            gl.push_mapped(pair[0], pair[1], &mut rule.nodes, &mut rule.weights);
        }
        rule
    }
}

/// Breakpoints for `[lo, hi]`: `base_panels` uniform panels, refined by halving
/// toward every feature until the local scale drops to a quarter of its width.
/// With `period = Some(T)` features are also honoured through their images shifted by ±T.
pub fn graded_breaks(
    lo: f64,
    hi: f64,
    features: &[Feature],
    base_panels: usize,
    period: Option<f64>,
) -> Vec<f64> {
    let span = hi - lo;
    let base = base_panels.max(1);
    let mut pts: Vec<f64> = (0..=base)
        .map(|i| lo + span * i as f64 / base as f64)
        .collect();
    pts[base] = hi;
    for feat in features {
        let shifts: &[f64] = match period {
            Some(_) => &[-1.0, 0.0, 1.0],
            None => &[0.0],
        };
        for s in shifts {
            let c = feat.angle + s * period.unwrap_or(0.0);
            let floor = MIN_SCALE.max(64.0 * f64::EPSILON * c.abs());
            let min_scale = (0.25 * feat.width).max(floor);
            // Skip images that are far outside the interval.
            if c < lo - span || c > hi + span {
                continue;
            }
            if c > lo && c < hi {
                pts.push(c);
            }
            let mut scale = span;
            while scale > min_scale {
                scale *= 0.5;
                for q in [c - scale, c + scale] {
                    if q > lo && q < hi {
                        pts.push(q);
                    }
                }
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = Vec::with_capacity(pts.len());
    for p in pts {
        match out.last() {
            Some(&last) if p - last <= f64::EPSILON * p.abs().max(1.0) => {}
            _ => out.push(p),
        }
    }
    out
}

/// Normalized rule on the circle `[0, 2π)`: weights sum to one.
pub fn circle_rule(features: &[Feature], base_panels: usize, gl: &GaussLegendre) -> Rule {
    let two_pi = 2.0 * PI;
    let wrapped: Vec<Feature> = features
        .iter()
        .map(|f| Feature {
            angle: f.angle.rem_euclid(two_pi),
            width: f.width,
        })
        .collect();
    let breaks = graded_breaks(0.0, two_pi, &wrapped, base_panels, Some(two_pi));
    let mut rule = Rule::from_breaks(&breaks, gl);
    for w in &mut rule.weights {
        *w /= two_pi;
    }
    rule
}

/// Radial cells `[0, 1/2], [1/2, 3/4], …` graded toward r = 1 with the given ratio;
/// the final cell reaches 1. Returns `cells + 1` breakpoints.
pub fn radial_breaks(cells: usize, ratio: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    let mut gap = 1.0;
    for _ in 1..cells {
        gap *= ratio;
        pts.push(1.0 - gap);
    }
    pts.push(1.0);
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let gl = GaussLegendre::new(8);
        // degree 15 is the exactness limit for 8 nodes
        let v = gl.integrate(0.0, 1.0, |x| x.powi(15));
        assert!((v - 1.0 / 16.0).abs() < 1e-15);
        let w: f64 = gl.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_order_has_center_node() {
        let gl = GaussLegendre::new(5);
        assert_eq!(gl.nodes[2], 0.0);
        let v = gl.integrate(-1.0, 1.0, |x| x.powi(8));
        assert!((v - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn graded_rule_handles_log_singularity() {
        let gl = GaussLegendre::new(16);
        let breaks = graded_breaks(0.0, 1.0, &[Feature::singular(0.0)], 4, None);
        let rule = Rule::from_breaks(&breaks, &gl);
        // ∫_0^1 log(x)^2 dx = 2
        let v = rule.integrate(|x| x.ln().powi(2));
        assert!((v - 2.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn circle_rule_is_normalized() {
        let gl = GaussLegendre::new(16);
        let rule = circle_rule(&[Feature::singular(0.0), Feature { angle: 2.0, width: 1e-3 }], 8, &gl);
        let w: f64 = rule.weights.iter().sum();
        assert!((w - 1.0).abs() < 1e-13);
        assert!(rule.nodes.iter().all(|&t| (0.0..=2.0 * PI).contains(&t)));
    }

    #[test]
    fn radial_breaks_reach_one() {
        let b = radial_breaks(4, 0.5);
        assert_eq!(b, vec![0.0, 0.5, 0.75, 0.875, 1.0]);
    }
}
