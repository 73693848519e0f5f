use num_complex::Complex64;
use volterra_core::distances::{dist_vmoa, DistConfig};
use volterra_core::hardy::{bmoa_seminorm, mobius_centered_norm, NormConfig, SeminormGrid};
use volterra_core::disc::registry;
use volterra_core::{DiscPoint, Symbol};

fn grid() -> SeminormGrid {
    SeminormGrid::dyadic(6, 8).unwrap()
}

#[test]
fn seminorm_is_homogeneous_and_ignores_constants() {
    let c = Complex64::new(-1.5, 2.0);
    for (name, g) in registry() {
        let base = bmoa_seminorm(&g, &grid(), 2.0).unwrap().value;
        let scaled = bmoa_seminorm(&g.clone().scaled(c), &grid(), 2.0).unwrap().value;
        assert!((scaled - c.norm() * base).abs() <= 1e-9 * (1.0 + scaled), "{name}: {scaled} vs {}", c.norm() * base);
        let shifted = g.clone().minus(Symbol::constant(Complex64::new(3.0, -1.0)));
        let moved = bmoa_seminorm(&shifted, &grid(), 2.0).unwrap().value;
        assert!((moved - base).abs() <= 1e-9 * (1.0 + base), "{name}: {moved} vs {base}");
    }
}

#[test]
fn centered_norm_is_rotation_covariant() {
    let g = Symbol::lacunary(2, 1.5, 12).unwrap();
    let a = DiscPoint::polar(0.6, 0.4).unwrap();
    let cfg = NormConfig::default();
    let direct = mobius_centered_norm(&g, a, 2.0, &cfg).unwrap().value;
    let phi = 0.4;
    let rotated = Symbol::dilate_rotate(g, 1.0, phi).unwrap();
    let back = mobius_centered_norm(&rotated, DiscPoint::polar(0.6, 0.4 - phi).unwrap(), 2.0, &cfg).unwrap().value;
    assert!((direct - back).abs() < 1e-10, "{direct} vs {back}");
}

#[test]
fn distance_proxy_never_exceeds_seminorm() {
    let cfg = DistConfig { angles: 8, ..DistConfig::with_levels(8) };
    for (name, g) in registry() {
        let est = match dist_vmoa(&g, 2.0, &cfg) {
            Ok(e) => e,
            Err(_) => continue,
        };
        assert!(est.proxy <= est.seminorm.value + 1e-9, "{name}: {} > {}", est.proxy, est.seminorm.value);
        assert!(est.proxy >= 0.0);
    }
}
