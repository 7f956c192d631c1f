use std::f64::consts::PI;

use annuli_core::bounds::{riemann_bound, AnnulusSpec};
use annuli_core::radial_harmonic::{build_map, RadialMapParams, Surface};
use annuli_core::verify::{energy, polar_laplacian_check, sample, theta_energy, PolarGrid};
use annuli_core::Complex64;

#[test]
fn extremal_sphere_map_end_to_end() {
    let params = RadialMapParams::extremal(Surface::Sphere, 0.5, 1.0 / 3f64.sqrt()).unwrap();
    let map = build_map(&params, 256).unwrap();
    assert!((map.inner_radius() - 0.490808350764208).abs() < 1e-12);
    for k in 0..8 {
        let e = Complex64::from_polar(1.0, 0.8 * k as f64);
        assert!((map.evaluate(e).unwrap().norm() - params.sigma()).abs() < 1e-12);
        assert!((map.evaluate(e * map.inner_radius()).unwrap().norm() - params.tau()).abs() < 1e-10);
    }
    let spec = AnnulusSpec::Chart { inner: params.tau(), outer: params.sigma() };
    let pair = riemann_bound(spec, map.inner_radius()).unwrap();
    assert!(pair.satisfied() && pair.agree());

    let grid = PolarGrid::new(map.inner_radius(), 1.0, 48, 64).unwrap();
    let gm = sample(&Surface::Sphere.metric(), &map, grid).unwrap();
    let theta = theta_energy(&gm).unwrap();
    assert!((theta - 2.0 * PI * (1.0 / map.inner_radius()).ln()).abs() < 1e-10);
    assert!(energy(&gm) > 0.0);
    let rep = polar_laplacian_check(&map, &grid).unwrap();
    assert!(rep.max_delta_theta < 1e-8 && rep.min_laplacian > -1e-6);
}

#[test]
fn hyperbolic_reference_radius() {
    let map = build_map(&RadialMapParams::extremal(Surface::Hyperbolic, 0.5, 0.75).unwrap(), 128).unwrap();
    assert!((map.inner_radius() - 0.4699807519127747).abs() < 1e-12);
    let back = map.reversed();
    let z = Complex64::from_polar(0.8, 0.2);
    let w = back.evaluate(z).unwrap();
    let want = map.evaluate(Complex64::from_polar(map.inner_radius() / 0.8, 0.2)).unwrap();
    assert!((w - want).norm() < 1e-12);
}
