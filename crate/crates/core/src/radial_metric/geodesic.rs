#[allow(unused_imports)]
use num_traits::Float;

use super::metric::RadialMetric;
use crate::numeric::roots::{brent, RootConfig};
use crate::{Error, Result};

/// Christoffel symbols of `h(x^2 + y^2) |dz|` at a point; `g_ijk` is `Γ^i_jk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel {
    pub g111: f64,
    pub g112: f64,
    pub g122: f64,
    pub g211: f64,
    pub g212: f64,
    pub g222: f64,
}

pub fn christoffel(metric: &RadialMetric, x: f64, y: f64) -> Result<Christoffel> {
    let t = x * x + y * y;
    let l = metric.log_derivative(t)?;
    let lx = 2.0 * x * l;
    let ly = 2.0 * y * l;
    Ok(Christoffel { g111: lx, g112: ly, g122: -lx, g211: -ly, g212: lx, g222: ly })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicReport {
    /// Largest distance of the trajectory from the starting ray.
    pub max_transverse: f64,
    pub arclength: f64,
    pub distance: f64,
    pub arclength_error: f64,
    pub steps: usize,
}

type State = [f64; 4];

fn rhs(metric: &RadialMetric, s: &State) -> Result<State> {
    let [x, y, u, v] = *s;
    let c = christoffel(metric, x, y)?;
    Ok([
        u,
        v,
        -(c.g111 * u * u + 2.0 * c.g112 * u * v + c.g122 * v * v),
        -(c.g211 * u * u + 2.0 * c.g212 * u * v + c.g222 * v * v),
    ])
}

fn rk4(metric: &RadialMetric, s: &State, ds: f64) -> Result<State> {
    let add = |a: &State, k: &State, f: f64| [a[0] + f * k[0], a[1] + f * k[1], a[2] + f * k[2], a[3] + f * k[3]];
    let k1 = rhs(metric, s)?;
    let k2 = rhs(metric, &add(s, &k1, 0.5 * ds))?;
    let k3 = rhs(metric, &add(s, &k2, 0.5 * ds))?;
    let k4 = rhs(metric, &add(s, &k3, ds))?;
    let mut out = *s;
    for i in 0..4 {
        out[i] += ds / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::Integration("geodesic state is not finite"));
    }
    Ok(out)
}

/// Integrates the geodesic equations from `(a, 0)` with unit-speed radial
/// initial velocity until the trajectory reaches `|z| = b`.
pub fn verify_radial_geodesic(metric: &RadialMetric, a: f64, b: f64, steps: usize) -> Result<GeodesicReport> {
    verify_radial_geodesic_at(metric, a, b, 0.0, steps)
}

/// Same as [`verify_radial_geodesic`] along the ray at angle `theta`.
pub fn verify_radial_geodesic_at(
    metric: &RadialMetric,
    a: f64,
    b: f64,
    theta: f64,
    steps: usize,
) -> Result<GeodesicReport> {
    if !(0.0 < a && a < b) {
        return Err(Error::InvalidParameter("geodesic check needs 0 < a < b"));
    }
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be positive"));
    }
    let domain = metric.t_domain();
    if !domain.contains(a * a) || !domain.contains(b * b) {
        return Err(Error::Domain { what: "b", value: b });
    }
    let distance = metric.radial_distance(a, b)?;

    let (sin, cos) = theta.sin_cos();
    let speed = 1.0 / metric.h_raw(a * a);
    let mut state: State = [a * cos, a * sin, speed * cos, speed * sin];
    // Trapezoidal length estimate; the step count only needs to be roughly right.
    let estimate = 0.5 * (b - a) * (metric.h_raw(a * a) + metric.h_raw(b * b));
    let ds = estimate / steps as f64;
    let transverse = |s: &State| (s[1] * cos - s[0] * sin).abs();
    let radius = |s: &State| s[0].hypot(s[1]);

    let mut max_transverse = 0.0f64;
    let cap = 64 * steps + 64;
    for n in 0..cap {
        let next = rk4(metric, &state, ds)?;
        if radius(&next) >= b {
            let root = RootConfig { abs_tol: 1e-16, rel_tol: 1e-15, max_iter: 200 };
            let partial = brent(
                |h| rk4(metric, &state, h).map(|s| radius(&s) - b).unwrap_or(f64::NAN),
                0.0,
                ds,
                &root,
            )?;
            let last = rk4(metric, &state, partial)?;
            max_transverse = max_transverse.max(transverse(&last));
            let arclength = n as f64 * ds + partial;
            return Ok(GeodesicReport {
                max_transverse,
                arclength,
                distance,
                arclength_error: (arclength - distance).abs(),
                steps: n + 1,
            });
        }
        if !domain.contains(next[0] * next[0] + next[1] * next[1]) {
            return Err(Error::Integration("geodesic left the chart"));
        }
        max_transverse = max_transverse.max(transverse(&next));
        state = next;
    }
    Err(Error::Integration("geodesic did not reach the outer radius"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn christoffel_symmetries() {
        let m = RadialMetric::sphere();
        let c = christoffel(&m, 0.3, -0.7).unwrap();
        assert_eq!(c.g111, c.g212);
        assert_eq!(c.g222, c.g112);
        assert_eq!(c.g211, -c.g222);
        assert_eq!(c.g122, -c.g111);
        // h_x / h for h = 2 / (1 + t) is -2x / (1 + t).
        assert!((c.g111 - (-0.6 / 1.58)).abs() < 1e-15);
    }

    #[test]
    fn euclidean_line_is_exact() {
        let r = verify_radial_geodesic(&RadialMetric::euclidean(), 0.2, 0.8, 10_000).unwrap();
        assert_eq!(r.max_transverse, 0.0);
        assert!((r.arclength - 0.6).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn sphere_arclength_converges() {
        let m = RadialMetric::sphere();
        let want = 2.0 * 1f64.atan() - 2.0 * 0.1f64.atan();
        let coarse = verify_radial_geodesic(&m, 0.1, 1.0, 20).unwrap();
        let fine = verify_radial_geodesic(&m, 0.1, 1.0, 40).unwrap();
        assert!((fine.distance - want).abs() < 1e-12);
        assert!(fine.arclength_error < coarse.arclength_error);
        let ratio = coarse.arclength_error / fine.arclength_error;
        assert!(ratio > 10.0, "ratio {ratio}");
    }

    #[test]
    fn arclength_is_fourth_order() {
        let m = RadialMetric::hyperbolic_disk();
        let errs: [f64; 3] = [25, 50, 100].map(|n| verify_radial_geodesic_at(&m, 0.1, 0.9, 0.7, n).unwrap().arclength_error);
        for w in errs.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order > 3.5 && order < 4.6, "order {order} from {errs:?}");
        }
        let fine = verify_radial_geodesic_at(&m, 0.1, 0.9, 0.7, 4000).unwrap();
        assert!(fine.max_transverse < 1e-8);
        assert!(fine.arclength_error < 1e-8);
    }

    #[test]
    fn axis_ray_on_hyperbolic_disk() {
        let m = RadialMetric::hyperbolic_disk();
        let r = verify_radial_geodesic(&m, 0.1, 0.9, 2000).unwrap();
        assert!(r.max_transverse < 1e-8);
        let want = (19.0f64).ln() - (1.1f64 / 0.9).ln();
        assert!((r.arclength - want).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_segments() {
        let m = RadialMetric::sphere();
        assert!(verify_radial_geodesic(&m, 0.5, 0.5, 10).is_err());
        assert!(verify_radial_geodesic(&RadialMetric::hyperbolic_disk(), 0.5, 1.0, 10).is_err());
        let _ = PI;
    }
}
