use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::*;
use crate::radial_harmonic::{build_map, EuclideanNitscheMap, RadialMapParams, Surface};
use crate::radial_metric::RadialMetric;
use crate::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn slopes(errs: &[f64]) -> Vec<f64> {
    errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

#[test]
fn holomorphic_and_cylinder_maps_are_exactly_harmonic() {
    let sphere = RadialMetric::sphere();
    let grid = PolarGrid::new(0.3, 1.0, 24, 32).unwrap();
    let dil = analytic_residual(&sphere, &Dilation(c(0.8, 0.0)), &grid).unwrap();
    assert_eq!(dil.max_abs, 0.0);
    let cyl = analytic_residual(&sphere, &CylinderGauss, &grid).unwrap();
    assert!(cyl.scale > 0.1);
    assert!(cyl.relative() < 1e-12, "{}", cyl.relative());
}

#[test]
fn stencil_residual_is_second_order() {
    let map = build_map(&RadialMapParams::extremal(Surface::Hyperbolic, 0.5, 0.75).unwrap(), 256).unwrap();
    let metric = RadialMetric::hyperbolic_disk();
    let mut grid = PolarGrid::new(map.inner_radius(), 1.0, 33, 32).unwrap();
    let mut errs = Vec::new();
    for _ in 0..3 {
        errs.push(pde_residual(&sample(&metric, &map, grid).unwrap()).max_abs);
        grid = grid.refined();
    }
    for s in slopes(&errs) {
        assert!((1.7..=2.3).contains(&s), "{errs:?}");
    }
}

#[test]
fn stencil_residual_of_cylinder_map_is_second_order() {
    let sphere = RadialMetric::sphere();
    let mut grid = PolarGrid::new(0.4, 1.0, 17, 32).unwrap();
    let mut errs = Vec::new();
    for _ in 0..3 {
        errs.push(pde_residual(&sample(&sphere, &CylinderGauss, grid).unwrap()).max_abs);
        grid = grid.refined();
    }
    for s in slopes(&errs) {
        assert!((1.7..=2.3).contains(&s), "{errs:?}");
    }
}

#[test]
fn hopf_differential_checks() {
    let sphere = RadialMetric::sphere();
    let grid = PolarGrid::new(0.5, 1.0, 16, 32).unwrap();
    assert_eq!(analytic_hopf_residual(&sphere, &Power(1), &grid).unwrap(), 0.0);

    let map = build_map(&RadialMapParams::extremal(Surface::Sphere, 0.3, 0.8).unwrap(), 256).unwrap();
    let mut g = PolarGrid::new(map.inner_radius(), 1.0, 17, 32).unwrap();
    let mut errs = Vec::new();
    let mut control = Vec::new();
    let bad = ConjSquarePerturbation { inner: Power(1), eps: 0.01 };
    let bad_grid = PolarGrid::new(0.5, 1.0, 17, 32).unwrap();
    let mut bg = bad_grid;
    for _ in 0..3 {
        errs.push(hopf_residual(&sample(&sphere, &map, g).unwrap()));
        control.push(hopf_residual(&sample(&sphere, &bad, bg).unwrap()));
        g = g.refined();
        bg = bg.refined();
    }
    assert!(errs[2] < errs[1] && errs[1] < errs[0], "{errs:?}");
    assert!(control.iter().all(|&v| v > 1e-3), "{control:?}");

    // The Hopf differential of a radial map is c / z^2.
    let z = Complex64::from_polar(0.7, 0.4);
    let psi = hopf_differential(&sphere, &map.jet(z).unwrap()).unwrap();
    let want = map.hopf_coefficient() / (z * z);
    assert!((psi - want).norm() < 1e-8 * want.norm());
}

#[test]
fn energy_examples() {
    let plane = RadialMetric::euclidean();
    let grid = PolarGrid::new(0.5, 1.0, 129, 512).unwrap();
    let constant = GridMap::sample(grid, plane.clone(), |_| Ok(c(0.3, 0.1))).unwrap();
    assert!(energy(&constant) < 1e-25);
    let id = sample(&plane, &Power(1), grid).unwrap();
    let e = energy(&id);
    assert!((e - 0.75 * PI).abs() < 1e-4, "{e}");
    let map = build_map(&RadialMapParams::extremal(Surface::Sphere, 0.3, 0.8).unwrap(), 128).unwrap();
    let gm = sample(&RadialMetric::sphere(), &map, PolarGrid::new(map.inner_radius(), 1.0, 40, 48).unwrap()).unwrap();
    let e0 = energy(&gm);
    assert!((energy(&gm.rotated(5)) - e0).abs() < 1e-12 * e0);
}

#[test]
fn angular_energy() {
    let plane = RadialMetric::euclidean();
    let grid = PolarGrid::new(0.25, 1.0, 40, 64).unwrap();
    let want = 2.0 * PI * 4f64.ln();
    let id = theta_energy(&sample(&plane, &Power(1), grid).unwrap()).unwrap();
    assert!((id - want).abs() < 1e-12);
    let sq = theta_energy(&sample(&plane, &Power(2), grid).unwrap()).unwrap();
    assert!((sq - 4.0 * want).abs() < 1e-11);
    let rot = theta_energy(&sample(&plane, &Dilation(Complex64::from_polar(1.0, 0.7)), grid).unwrap()).unwrap();
    assert!((rot - id).abs() < 1e-12);

    let map = build_map(&RadialMapParams::extremal(Surface::Hyperbolic, 0.4, 0.9).unwrap(), 128).unwrap();
    let g = PolarGrid::new(map.inner_radius(), 1.0, 30, 40).unwrap();
    let radial = theta_energy(&sample(&RadialMetric::hyperbolic_disk(), &map, g).unwrap()).unwrap();
    assert!((radial - 2.0 * PI * (1.0 / map.inner_radius()).ln()).abs() < 1e-10);

    let nit = EuclideanNitscheMap::new(0.5, 0.6).unwrap();
    let gn = PolarGrid::new(0.5, 1.0, 40, 64).unwrap();
    assert!(theta_energy(&sample(&plane, &nit, gn).unwrap()).unwrap() >= 2.0 * PI * 2f64.ln() - 1e-9);

    let zero = GridMap::sample(gn, plane, |z| Ok(z - 0.5)).unwrap();
    assert!(theta_energy(&zero).is_err());
}

#[test]
fn geodesic_polar_identity_specialises() {
    for i in 1..100 {
        let rho = 1.5 * i as f64 / 100.0;
        let s = polar_growth(&RadialMetric::sphere(), (0.5 * rho).tan()).unwrap();
        assert!((s - 0.5 * (2.0 * rho).sin()).abs() < 1e-9);
        let h = polar_growth(&RadialMetric::hyperbolic_disk(), (0.5 * rho).tanh()).unwrap();
        assert!((h - 0.5 * (2.0 * rho).sinh()).abs() < 1e-9);
    }
}

#[test]
fn polar_laplacian_of_radial_maps() {
    let id = build_map(&RadialMapParams::new(Surface::Hyperbolic, 0.0, 1.0, 0.3).unwrap(), 64).unwrap();
    let mut grid = PolarGrid::new(0.3, 0.95, 17, 32).unwrap();
    let mut errs = Vec::new();
    for _ in 0..3 {
        let rep = polar_laplacian_check(&id, &grid).unwrap();
        assert!(rep.max_delta_theta < 1e-8, "{rep:?}");
        errs.push(rep.max_abs);
        grid = grid.refined();
    }
    assert!(errs[2] < errs[1] && errs[1] < errs[0], "{errs:?}");

    let sph = build_map(&RadialMapParams::extremal(Surface::Sphere, 0.2, 0.9).unwrap(), 128).unwrap();
    let rep = polar_laplacian_check(&sph, &PolarGrid::new(sph.inner_radius(), 1.0, 40, 48).unwrap()).unwrap();
    assert!(rep.min_laplacian > -1e-6, "{rep:?}");
    assert!(rep.max_delta_theta < 1e-8);
}

#[test]
fn isometry_invariance() {
    let sphere = RadialMetric::sphere();
    let map = build_map(&RadialMapParams::extremal(Surface::Sphere, 0.3, 0.8).unwrap(), 256).unwrap();
    let grid = PolarGrid::new(map.inner_radius(), 1.0, 65, 64).unwrap();
    let gm = sample(&sphere, &map, grid).unwrap();
    let same = isometry_conjugate(&gm, c(0.0, 0.0), 0.0).unwrap();
    assert_eq!(same.values(), gm.values());

    let base = pde_residual(&gm).max_metric_norm;
    let moved = pde_residual(&isometry_conjugate(&gm, c(0.3, 0.0), 0.0).unwrap()).max_metric_norm;
    assert!(moved < 2.0 * base && moved > 0.5 * base, "{base} {moved}");

    let hyp = RadialMetric::hyperbolic_disk();
    let g = PolarGrid::new(0.2, 0.9, 16, 32).unwrap();
    let mob = Isometric { inner: Power(1), surface: Surface::Hyperbolic, a: c(0.4, -0.3), phi: 1.1 };
    let rep = analytic_residual(&hyp, &mob, &g).unwrap();
    assert!(rep.relative() < 1e-12, "{rep:?}");
    assert!(isometry_conjugate(&sample(&hyp, &Power(1), g).unwrap(), c(1.2, 0.0), 0.0).is_err());
}

#[test]
fn isometries_preserve_the_metric_residual_pointwise() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let sph = build_map(&RadialMapParams::extremal(Surface::Sphere, 0.3, 0.8).unwrap(), 128).unwrap();
    let hyp = build_map(&RadialMapParams::extremal(Surface::Hyperbolic, 0.3, 0.8).unwrap(), 128).unwrap();
    for (surface, map) in [(Surface::Sphere, &sph), (Surface::Hyperbolic, &hyp)] {
        let metric = surface.metric();
        for _ in 0..10 {
            let a = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..2.0 * PI));
            let phi = rng.gen_range(0.0..2.0 * PI);
            let moved = Isometric { inner: map, surface, a, phi };
            for k in 0..20 {
                let z = Complex64::from_polar(map.inner_radius() + (1.0 - map.inner_radius()) * (k as f64 + 0.5) / 20.0, 0.3 * k as f64);
                let j0 = map.jet(z).unwrap();
                let j1 = moved.jet(z).unwrap();
                let n0 = jet_residual(&metric, &j0).unwrap().0.norm() * metric.density(j0.w.norm_sqr()).unwrap();
                let n1 = jet_residual(&metric, &j1).unwrap().0.norm() * metric.density(j1.w.norm_sqr()).unwrap();
                assert!((n0 - n1).abs() < 1e-9, "{surface:?} {n0} {n1}");
                let e0 = metric.density(j0.w.norm_sqr()).unwrap() * (j0.wz.norm_sqr() + j0.wzb.norm_sqr()).sqrt();
                let e1 = metric.density(j1.w.norm_sqr()).unwrap() * (j1.wz.norm_sqr() + j1.wzb.norm_sqr()).sqrt();
                assert!((e0 - e1).abs() < 1e-10 * e0);
            }
        }
    }
}

#[test]
fn sphere_pole_is_reported() {
    let sphere = RadialMetric::sphere();
    let grid = PolarGrid::new(0.5, 1.0, 8, 8).unwrap();
    let gm = sample(&sphere, &Power(1), grid).unwrap();
    // 1 + ā w vanishes at w = -1 / ā = -1, which is a node.
    assert!(matches!(isometry_conjugate(&gm, c(1.0, 0.0), 0.0), Err(crate::Error::Pole)));
}

#[test]
fn critical_nitsche_map_is_univalent_on_samples() {
    let f = EuclideanNitscheMap::new(0.5, 0.8).unwrap();
    let mut images = Vec::new();
    for i in 0..100 {
        let r = 0.5 + 0.5 * i as f64 / 99.0;
        for j in 0..100 {
            images.push(f.evaluate(Complex64::from_polar(r, 2.0 * PI * j as f64 / 100.0)).unwrap());
        }
    }
    let rep = univalence_scan(&images, 1e-12);
    assert!(rep.distinct, "{rep:?}");
    let folded: Vec<Complex64> = images.iter().map(|w| w * w.conj()).collect();
    assert!(!univalence_scan(&folded, 1e-12).distinct);
}

#[test]
fn grid_validation() {
    assert!(PolarGrid::new(0.5, 1.0, 7, 32).is_err());
    assert!(PolarGrid::new(1.0, 0.5, 16, 32).is_err());
    let g = PolarGrid::new(0.5, 1.0, 8, 8).unwrap();
    let outside = GridMap::sample(g, RadialMetric::hyperbolic_disk(), |z| Ok(z * 2.0));
    assert!(outside.is_err());
}
