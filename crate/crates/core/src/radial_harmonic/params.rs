#[allow(unused_imports)]
use num_traits::Float;

use crate::numeric::quad::{integrate, QuadConfig};
use crate::radial_metric::RadialMetric;
use crate::{Error, Result};

/// Target surface of a radial harmonic map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    /// The round sphere in the stereographic chart, density `2 / (1 + t)`.
    Sphere,
    /// The hyperbolic disk, density `2 / (1 - t)`.
    Hyperbolic,
}

impl Surface {
    /// `+1` for the sphere and `-1` for the hyperbolic disk.
    pub fn sign(self) -> f64 {
        match self {
            Surface::Sphere => 1.0,
            Surface::Hyperbolic => -1.0,
        }
    }

    pub fn metric(self) -> RadialMetric {
        match self {
            Surface::Sphere => RadialMetric::sphere(),
            Surface::Hyperbolic => RadialMetric::hyperbolic_disk(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Surface::Sphere => "sphere",
            Surface::Hyperbolic => "hyperbolic",
        }
    }
}

/// `y^2 + c (1 ± y^2)^2`, with `+` on the sphere and `-` on the hyperbolic disk.
pub fn radicand(surface: Surface, y: f64, c: f64) -> f64 {
    let q = 1.0 + surface.sign() * y * y;
    y * y + c * q * q
}

/// Derivative of [`radicand`] in `y`.
pub fn radicand_prime(surface: Surface, y: f64, c: f64) -> f64 {
    let e = surface.sign();
    2.0 * y + 4.0 * e * c * y * (1.0 + e * y * y)
}

/// Smallest admissible first-integral constant, `-(1/τ ± τ)^{-2}`; the
/// radicand then has a simple zero at `y = τ`.
pub fn extremal_c(surface: Surface, tau: f64) -> f64 {
    let p = tau / (1.0 + surface.sign() * tau * tau);
    -p * p
}

/// Validated parameters `(surface, c, σ, τ)` of a radial harmonic map onto
/// the annulus `τ < |w| < σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMapParams {
    surface: Surface,
    c: f64,
    delta_c: f64,
    sigma: f64,
    tau: f64,
}

impl RadialMapParams {
    pub fn new(surface: Surface, c: f64, sigma: f64, tau: f64) -> Result<Self> {
        check_radii(sigma, tau)?;
        if !c.is_finite() {
            return Err(Error::Domain { what: "c", value: c });
        }
        let c_ext = extremal_c(surface, tau);
        let mut delta_c = c - c_ext;
        if delta_c < 0.0 {
            if delta_c < -4.0 * f64::EPSILON * c_ext.abs() {
                return Err(Error::Domain { what: "c", value: c });
            }
            delta_c = 0.0;
        }
        Ok(Self { surface, c: c_ext + delta_c, delta_c, sigma, tau })
    }

    /// The extremal member `c = -(1/τ ± τ)^{-2}`.
    pub fn extremal(surface: Surface, tau: f64, sigma: f64) -> Result<Self> {
        Self::above_extremal(surface, tau, sigma, 0.0)
    }

    /// `c = c_extremal + delta_c` with the offset kept exactly.
    pub fn above_extremal(surface: Surface, tau: f64, sigma: f64, delta_c: f64) -> Result<Self> {
        check_radii(sigma, tau)?;
        if !(delta_c >= 0.0) || !delta_c.is_finite() {
            return Err(Error::Domain { what: "delta_c", value: delta_c });
        }
        Ok(Self { surface, c: extremal_c(surface, tau) + delta_c, delta_c, sigma, tau })
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn c_extremal(&self) -> f64 {
        extremal_c(self.surface, self.tau)
    }

    /// `c - c_extremal`, never negative.
    pub fn delta_c(&self) -> f64 {
        self.delta_c
    }

    pub fn is_extremal(&self) -> bool {
        self.delta_c == 0.0
    }

    /// Whether the image annulus is close to the extremal constant in the
    /// sense used to choose the table grading.
    pub fn near_extremal(&self) -> bool {
        self.delta_c <= 1e-6 * self.c_extremal().abs()
    }

    /// False for spherical maps with `σ = 1`, whose outer image circle is
    /// the equator; the spherical modulus bound needs `σ < 1`.
    pub fn sphere_bound_applicable(&self) -> bool {
        self.surface == Surface::Hyperbolic || self.sigma < 1.0
    }

    pub(crate) fn radicand(&self) -> StableRadicand {
        StableRadicand::new(self)
    }
}

fn check_radii(sigma: f64, tau: f64) -> Result<()> {
    if !(tau > 0.0) {
        return Err(Error::Domain { what: "tau", value: tau });
    }
    if !(sigma > tau && sigma <= 1.0) {
        return Err(Error::Domain { what: "sigma", value: sigma });
    }
    Ok(())
}

/// The radicand in the variable `u = sqrt(y - τ)`, written so that the
/// simple zero at `y = τ` is factored out exactly:
/// `R = u^2 E(y) + δc (1 ± y^2)^2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StableRadicand {
    e: f64,
    tau: f64,
    phi_tau: f64,
    one_minus_e_tau2: f64,
    one_plus_e_tau2: f64,
    delta_c: f64,
    c: f64,
}

impl StableRadicand {
    fn new(p: &RadialMapParams) -> Self {
        let e = p.surface.sign();
        let tau = p.tau;
        let one_plus_e_tau2 = 1.0 + e * tau * tau;
        let one_minus_e_tau2 = if e > 0.0 { (1.0 - tau) * (1.0 + tau) } else { 1.0 + tau * tau };
        Self {
            e,
            tau,
            phi_tau: tau / one_plus_e_tau2,
            one_minus_e_tau2,
            one_plus_e_tau2,
            delta_c: p.delta_c,
            c: p.c,
        }
    }

    /// `R / u^2` with the zero-order term split off so that `δc = 0` is exact.
    fn e_factor(&self, u: f64) -> f64 {
        let u2 = u * u;
        let y = self.tau + u2;
        let q = 1.0 + self.e * y * y;
        (self.one_minus_e_tau2 - self.e * self.tau * u2) * (y + self.phi_tau * q) / self.one_plus_e_tau2
    }

    pub(crate) fn at_u(&self, u: f64) -> f64 {
        let y = self.tau + u * u;
        let q = 1.0 + self.e * y * y;
        u * u * self.e_factor(u) + self.delta_c * q * q
    }

    pub(crate) fn at_y(&self, y: f64) -> f64 {
        self.at_u((y - self.tau).max(0.0).sqrt())
    }

    pub(crate) fn prime_at_y(&self, y: f64) -> f64 {
        2.0 * y + 4.0 * self.e * self.c * y * (1.0 + self.e * y * y)
    }

    /// `dy / sqrt(R)` in the variable `u`: `2 u / sqrt(R)`.
    pub(crate) fn integrand(&self, u: f64) -> f64 {
        let mut s = self.e_factor(u);
        if self.delta_c != 0.0 {
            let y = self.tau + u * u;
            let q = 1.0 + self.e * y * y;
            s += self.delta_c * q * q / (u * u);
        }
        2.0 / s.sqrt()
    }

    pub(crate) fn u_of(&self, y: f64) -> f64 {
        (y - self.tau).max(0.0).sqrt()
    }

    /// `∫_{y0}^{y1} dy / sqrt(R(y))` for `τ <= y0 <= y1`.
    pub(crate) fn log_radius_span(&self, y0: f64, y1: f64, cfg: &QuadConfig) -> Result<f64> {
        self.log_radius_span_u(self.u_of(y0), self.u_of(y1), cfg)
    }

    pub(crate) fn log_radius_span_u(&self, u0: f64, u1: f64, cfg: &QuadConfig) -> Result<f64> {
        Ok(integrate(|u| self.integrand(u), u0, u1, cfg)?.value)
    }
}

pub(crate) fn default_quad() -> QuadConfig {
    QuadConfig { rel_tol: 1e-13, abs_tol: 1e-15, max_intervals: 4000 }
}

/// Inner radius `r_in = exp(-∫_τ^σ dy / sqrt(R(y)))` of the domain annulus
/// `A(r_in, 1)` mapped onto `A(τ, σ)`.
pub fn inner_radius(params: &RadialMapParams) -> Result<f64> {
    inner_radius_with(params, &default_quad())
}

pub fn inner_radius_with(params: &RadialMapParams, cfg: &QuadConfig) -> Result<f64> {
    let span = params.radicand().log_radius_span(params.tau, params.sigma, cfg)?;
    let r = (-span).exp();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain { what: "inner radius", value: r });
    }
    Ok(r)
}

/// Inner radius of the extremal member; it is the smallest over all
/// admissible `c`.
pub fn extremal_inner_radius(surface: Surface, tau: f64, sigma: f64) -> Result<f64> {
    inner_radius(&RadialMapParams::extremal(surface, tau, sigma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use core::f64::consts::PI;

    #[test]
    fn radicand_examples() {
        assert_eq!(radicand(Surface::Hyperbolic, 0.4, 0.0), 0.16000000000000003);
        for tau in [0.1, 0.5, 0.9] {
            for s in [Surface::Sphere, Surface::Hyperbolic] {
                assert!(radicand(s, tau, extremal_c(s, tau)).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn stable_form_matches_naive() {
        for s in [Surface::Sphere, Surface::Hyperbolic] {
            for dc in [0.0, 1e-3, 0.7] {
                let p = RadialMapParams::above_extremal(s, 0.3, 0.9, dc).unwrap();
                let st = p.radicand();
                for i in 0..=20 {
                    let y = 0.3 + 0.6 * i as f64 / 20.0;
                    let naive = radicand(s, y, p.c());
                    assert!((st.at_y(y) - naive).abs() < 1e-15, "{s:?} dc={dc} y={y}");
                    let d = radicand_prime(s, y, p.c());
                    assert!((st.prime_at_y(y) - d).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(RadialMapParams::new(Surface::Sphere, 0.0, 0.5, 0.6).is_err());
        assert!(RadialMapParams::new(Surface::Sphere, 0.0, 1.2, 0.6).is_err());
        assert!(RadialMapParams::new(Surface::Hyperbolic, -1.0, 0.9, 0.6).is_err());
        let c = extremal_c(Surface::Sphere, 0.5);
        let p = RadialMapParams::new(Surface::Sphere, c, 0.8, 0.5).unwrap();
        assert!(p.is_extremal());
        assert!(p.sphere_bound_applicable());
        let q = RadialMapParams::extremal(Surface::Sphere, 0.5, 1.0).unwrap();
        assert!(!q.sphere_bound_applicable());
    }

    #[test]
    fn inner_radius_examples() {
        let id = RadialMapParams::new(Surface::Hyperbolic, 0.0, 1.0, 0.3).unwrap();
        assert!((inner_radius(&id).unwrap() - 0.3).abs() < 1e-13);
        let dil = RadialMapParams::new(Surface::Sphere, 0.0, 0.8, 0.2).unwrap();
        assert!((inner_radius(&dil).unwrap() - 0.25).abs() < 1e-13);
        let lim = extremal_inner_radius(Surface::Sphere, 0.999, 1.0).unwrap();
        assert!((lim - (-PI / 2.0).exp()).abs() < 1e-4, "{lim}");
    }

    #[test]
    fn extremal_member_is_smallest() {
        for s in [Surface::Sphere, Surface::Hyperbolic] {
            let ext = extremal_inner_radius(s, 0.4, 0.85).unwrap();
            for dc in [1e-8, 1e-4, 1e-2, 0.1, 1.0] {
                let p = RadialMapParams::above_extremal(s, 0.4, 0.85, dc).unwrap();
                assert!(inner_radius(&p).unwrap() > ext);
            }
        }
    }

    #[test]
    fn extremal_tends_to_one_as_tau_reaches_sigma() {
        for s in [Surface::Sphere, Surface::Hyperbolic] {
            let vals: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4]
                .iter()
                .map(|d| extremal_inner_radius(s, 0.7 - d, 0.7).unwrap())
                .collect();
            assert!(vals.windows(2).all(|w| w[1] > w[0]));
            assert!(1.0 - vals[3] < 0.05, "{vals:?}");
        }
    }

    /// Dense polynomial in `y` with `f64` coefficients; exact for the small
    /// integer-like coefficients used here.
    #[derive(Clone, Debug, PartialEq)]
    struct Poly(Vec<f64>);

    impl Poly {
        fn mul(&self, o: &Poly) -> Poly {
            let mut out = vec![0.0; self.0.len() + o.0.len() - 1];
            for (i, a) in self.0.iter().enumerate() {
                for (j, b) in o.0.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            Poly(out)
        }
        fn add(&self, o: &Poly, k: f64) -> Poly {
            let n = self.0.len().max(o.0.len());
            Poly((0..n).map(|i| self.0.get(i).unwrap_or(&0.0) + k * o.0.get(i).unwrap_or(&0.0)).collect())
        }
        fn deriv(&self) -> Poly {
            Poly(self.0.iter().enumerate().skip(1).map(|(i, a)| i as f64 * a).collect())
        }
        fn is_zero(&self) -> bool {
            self.0.iter().all(|a| *a == 0.0)
        }
    }

    /// Multiplies the radial equation by `1 ± y^2` and substitutes
    /// `y'^2 = R(y)`, `y'' = R'(y)/2`.
    fn ode_polynomial(ode_sign: f64, radicand_sign: f64, c: f64) -> Poly {
        let y = Poly(vec![0.0, 1.0]);
        let y2 = y.mul(&y);
        let q_ode = Poly(vec![1.0, 0.0, ode_sign]);
        let q_rad = Poly(vec![1.0, 0.0, radicand_sign]);
        let r = y2.add(&q_rad.mul(&q_rad), c);
        let ypp = r.deriv().mul(&Poly(vec![0.5]));
        let lhs = ypp.add(&y, -1.0).mul(&q_ode);
        lhs.add(&y.mul(&r.add(&y2, -1.0)), -2.0 * ode_sign)
    }

    #[test]
    fn sphere_first_integral_uses_plus_sign() {
        for c in [-0.25, -0.125, 0.5, 2.0] {
            assert!(ode_polynomial(1.0, 1.0, c).is_zero());
            assert!(ode_polynomial(-1.0, -1.0, c).is_zero());
            assert!(!ode_polynomial(1.0, -1.0, c).is_zero());
        }
    }
}
