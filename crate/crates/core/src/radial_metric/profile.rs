use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::metric::{MetricKind, RadialMetric};
use crate::numeric::hermite::{Jet2, QuinticHermite};
use crate::numeric::quad::{integrate, QuadConfig};
use crate::numeric::roots::{brent, RootConfig};
use crate::{Error, Result};

/// Where geodesic polar coordinates are centred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileBase {
    Origin,
    /// The circle `|z| = 1`; distances inside it are negative.
    UnitCircle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOptions {
    /// Outer chart radius of the tabulation (numeric profiles only).
    pub r_max: Option<f64>,
    pub nodes: usize,
    pub quad: QuadConfig,
    pub root: RootConfig,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            r_max: None,
            nodes: 256,
            quad: QuadConfig::default().with_rel_tol(1e-12),
            root: RootConfig { abs_tol: 1e-15, rel_tol: 1e-14, max_iter: 200 },
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Euclidean,
    Sphere,
    HyperbolicDisk,
    HyperbolicAnnulus { log_r: f64 },
    Tabulated(QuinticHermite),
}

/// Distance profile `ω(r)` from the base and its inverse `g`.
#[derive(Debug, Clone)]
pub struct GeodesicProfile {
    metric: RadialMetric,
    base: ProfileBase,
    repr: Repr,
    root: RootConfig,
}

/// Builds the geodesic polar profile of `metric` with default options.
pub fn profile(metric: &RadialMetric) -> Result<GeodesicProfile> {
    GeodesicProfile::new(metric, &ProfileOptions::default())
}

impl GeodesicProfile {
    pub fn new(metric: &RadialMetric, opts: &ProfileOptions) -> Result<Self> {
        let (base, repr) = match metric.kind() {
            MetricKind::Euclidean => (ProfileBase::Origin, Repr::Euclidean),
            MetricKind::Sphere => (ProfileBase::Origin, Repr::Sphere),
            MetricKind::HyperbolicDisk => (ProfileBase::Origin, Repr::HyperbolicDisk),
            MetricKind::HyperbolicAnnulus { big_r } => {
                (ProfileBase::UnitCircle, Repr::HyperbolicAnnulus { log_r: big_r.ln() })
            }
            MetricKind::PuncturedDisk => return Err(Error::UnsupportedBase),
            MetricKind::Cigar | MetricKind::Custom => {
                let domain = metric.t_domain();
                if !(domain.lo == 0.0 && domain.lo_closed) {
                    return Err(Error::UnsupportedBase);
                }
                let r_max = opts.r_max.unwrap_or(if domain.hi.is_finite() {
                    domain.hi.sqrt() * (1.0 - 1e-3)
                } else {
                    10.0
                });
                if !domain.contains(r_max * r_max) || !(r_max > 0.0) {
                    return Err(Error::Domain { what: "r_max", value: r_max });
                }
                (ProfileBase::Origin, Repr::Tabulated(tabulate(metric, r_max, opts)?))
            }
        };
        Ok(Self { metric: metric.clone(), base, repr, root: opts.root })
    }

    pub fn metric(&self) -> &RadialMetric {
        &self.metric
    }

    pub fn base(&self) -> ProfileBase {
        self.base
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.repr, Repr::Tabulated(_))
    }

    /// Admissible chart radii `(lo, hi)`; `hi` may be infinite.
    pub fn radius_range(&self) -> (f64, f64) {
        match &self.repr {
            Repr::Euclidean | Repr::Sphere => (0.0, f64::INFINITY),
            Repr::HyperbolicDisk => (0.0, 1.0),
            Repr::HyperbolicAnnulus { log_r } => ((-log_r).exp(), log_r.exp()),
            Repr::Tabulated(t) => (0.0, t.last()),
        }
    }

    /// Admissible geodesic radii `(lo, hi)`.
    pub fn rho_range(&self) -> (f64, f64) {
        match &self.repr {
            Repr::Euclidean | Repr::HyperbolicDisk => (0.0, f64::INFINITY),
            Repr::Sphere => (0.0, PI),
            Repr::HyperbolicAnnulus { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            Repr::Tabulated(t) => (0.0, t.data()[t.data().len() - 1].value),
        }
    }

    /// Signed geodesic distance from the base to the circle of chart radius `r`.
    pub fn omega(&self, r: f64) -> Result<f64> {
        let (lo, hi) = self.radius_range();
        let inside = match self.repr {
            Repr::HyperbolicAnnulus { .. } => r > lo && r < hi,
            Repr::Sphere | Repr::Euclidean => r >= lo && r < hi,
            Repr::HyperbolicDisk => r >= lo && r < hi,
            Repr::Tabulated(_) => r >= lo && r <= hi,
        };
        if !inside {
            return Err(Error::Domain { what: "r", value: r });
        }
        Ok(match &self.repr {
            Repr::Euclidean => r,
            Repr::Sphere => 2.0 * r.atan(),
            Repr::HyperbolicDisk => 2.0 * r.atanh(),
            Repr::HyperbolicAnnulus { log_r } => 2.0 * (PI * r.ln() / (4.0 * log_r)).tan().atanh(),
            Repr::Tabulated(t) => t.eval(r).value,
        })
    }

    /// Inverse of [`omega`](Self::omega): the chart radius at geodesic radius `rho`.
    pub fn g(&self, rho: f64) -> Result<f64> {
        let (lo, hi) = self.rho_range();
        let inside = match self.repr {
            Repr::Sphere => rho >= lo && rho < hi,
            Repr::HyperbolicAnnulus { .. } => rho.is_finite(),
            _ => rho >= lo && rho <= hi,
        };
        if !inside {
            return Err(Error::Domain { what: "rho", value: rho });
        }
        Ok(match &self.repr {
            Repr::Euclidean => rho,
            Repr::Sphere => (0.5 * rho).tan(),
            Repr::HyperbolicDisk => (0.5 * rho).tanh(),
            Repr::HyperbolicAnnulus { log_r } => (4.0 * log_r / PI * (0.5 * rho).tanh().atan()).exp(),
            Repr::Tabulated(t) => {
                if rho == 0.0 {
                    return Ok(0.0);
                }
                let k = segment_by_value(t, rho);
                let (x0, x1) = (t.nodes()[k], t.nodes()[k + 1]);
                brent(|r| t.eval(r).value - rho, x0, x1, &self.root)?
            }
        })
    }
}

fn segment_by_value(t: &QuinticHermite, v: f64) -> usize {
    let data = t.data();
    let n = data.len();
    let idx = data.partition_point(|d| d.value <= v);
    idx.saturating_sub(1).min(n - 2)
}

fn tabulate(metric: &RadialMetric, r_max: f64, opts: &ProfileOptions) -> Result<QuinticHermite> {
    let n = opts.nodes.max(8);
    let mut x = Vec::with_capacity(n);
    let mut data = Vec::with_capacity(n);
    let mut acc = 0.0;
    let mut prev = 0.0;
    for i in 0..n {
        let r = r_max * i as f64 / (n - 1) as f64;
        if i > 0 {
            acc += integrate(|s| metric.h_raw(s * s), prev, r, &opts.quad)?.value;
        }
        x.push(r);
        let t = r * r;
        data.push(Jet2 {
            value: acc,
            d1: metric.h_raw(t),
            d2: 2.0 * r * metric.h_prime_raw(t),
        });
        prev = r;
    }
    QuinticHermite::new(x, data).ok_or(Error::InvalidParameter("profile table is not monotone"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial_metric::TDomain;

    fn check_consistency(p: &GeodesicProfile, rhos: &[f64], tol_inv: f64) {
        let m = p.metric();
        for &rho in rhos {
            let r = p.g(rho).unwrap();
            let back = p.omega(r).unwrap();
            assert!((back - rho).abs() < tol_inv, "{:?}: omega(g({rho})) = {back}", m.kind());
            let d = 1e-5;
            let gp = (p.g(rho + d).unwrap() - p.g(rho - d).unwrap()) / (2.0 * d);
            let resid = 1.0 - gp * m.density(r * r).unwrap();
            assert!(resid.abs() < 1e-6, "{:?}: 1 - g' h = {resid} at rho = {rho}", m.kind());
        }
    }

    #[test]
    fn closed_form_examples() {
        let sphere = profile(&RadialMetric::sphere()).unwrap();
        assert!((sphere.g(PI / 2.0).unwrap() - 1.0).abs() < 1e-15);
        let hyp = profile(&RadialMetric::hyperbolic_disk()).unwrap();
        assert_eq!(hyp.g(0.0).unwrap(), 0.0);
        let ann = profile(&RadialMetric::hyperbolic_annulus(core::f64::consts::E).unwrap()).unwrap();
        assert_eq!(ann.base(), ProfileBase::UnitCircle);
        let w = ann.omega(0.5f64.exp()).unwrap();
        assert!((w - 2.0 * (PI / 8.0).tan().atanh()).abs() < 1e-14);
        assert!((w - 1f64.asinh()).abs() < 1e-14);
        assert!(ann.omega(0.8).unwrap() < 0.0);
        assert_eq!(ann.omega(1.0).unwrap(), 0.0);
    }

    #[test]
    fn closed_forms_agree_with_quadrature() {
        let ann_metric = RadialMetric::hyperbolic_annulus(3.0).unwrap();
        let ann = profile(&ann_metric).unwrap();
        for i in 1..20 {
            let r = 1.0 / 3.0 + (3.0 - 1.0 / 3.0) * i as f64 / 20.0;
            let q = if r >= 1.0 {
                ann_metric.radial_distance(1.0, r).unwrap()
            } else {
                -ann_metric.radial_distance(r, 1.0).unwrap()
            };
            assert!((ann.omega(r).unwrap() - q).abs() < 1e-9, "r = {r}");
        }
        let sphere = profile(&RadialMetric::sphere()).unwrap();
        let s = RadialMetric::sphere();
        for r in [0.1, 0.5, 1.0, 3.0] {
            assert!((sphere.omega(r).unwrap() - s.radial_distance(0.0, r).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn profile_consistency() {
        let rhos: Vec<f64> = (1..=100).map(|i| 0.02 * i as f64).collect();
        check_consistency(&profile(&RadialMetric::hyperbolic_disk()).unwrap(), &rhos, 1e-12);
        check_consistency(&profile(&RadialMetric::euclidean()).unwrap(), &rhos, 1e-12);
        let sphere_rhos: Vec<f64> = rhos.iter().map(|r| r * 1.4).collect();
        check_consistency(&profile(&RadialMetric::sphere()).unwrap(), &sphere_rhos, 1e-12);
        let ann_rhos: Vec<f64> = rhos.iter().map(|r| r - 1.0).collect();
        check_consistency(&profile(&RadialMetric::hyperbolic_annulus(2.0).unwrap()).unwrap(), &ann_rhos, 1e-12);
    }

    #[test]
    fn tabulated_cigar_matches_asinh() {
        let p = profile(&RadialMetric::cigar()).unwrap();
        assert!(p.is_tabulated());
        for i in 0..=50 {
            let r = 0.19 * i as f64;
            assert!((p.omega(r).unwrap() - r.asinh()).abs() < 1e-11, "r = {r}");
        }
        let rhos: Vec<f64> = (1..=100).map(|i| 0.029 * i as f64).collect();
        check_consistency(&p, &rhos, 1e-11);
        for &rho in &rhos {
            assert!((p.g(rho).unwrap() - rho.sinh()).abs() < 1e-10);
        }
    }

    #[test]
    fn custom_profile_on_bounded_domain() {
        // Hyperbolic density written as a custom metric exercises the numeric path.
        let m = RadialMetric::custom(
            |t| 2.0 / (1.0 - t),
            |t| 2.0 / ((1.0 - t) * (1.0 - t)),
            TDomain::closed_open(0.0, 1.0),
        );
        let opts = ProfileOptions { r_max: Some(0.9), nodes: 400, ..ProfileOptions::default() };
        let p = GeodesicProfile::new(&m, &opts).unwrap();
        for i in 0..40 {
            let r = 0.9 * i as f64 / 40.0;
            assert!((p.omega(r).unwrap() - 2.0 * r.atanh()).abs() < 1e-10);
        }
        assert!(p.omega(0.95).is_err());
    }

    #[test]
    fn punctured_disk_has_no_origin_profile() {
        assert_eq!(profile(&RadialMetric::punctured_disk()).unwrap_err(), Error::UnsupportedBase);
    }
}
