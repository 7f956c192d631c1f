//! Necessary conditions on the modulus of an annulus `A(r₁, 1)` that admits
//! a harmonic diffeomorphism onto a given target annulus.
//!
//! Every report states an inequality that must hold if such a map exists;
//! none of them is sufficient.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::radial_harmonic::{extremal_inner_radius, Surface};
use crate::radial_metric::{profile, CurvatureSign, GeodesicProfile, MetricKind, RadialMetric};
use crate::{Error, Result};

/// Absolute tolerance under which `lhs` and `rhs` count as equal.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundId {
    MainTheorem,
    SphereGeodesic,
    SphereChart,
    HyperbolicGeodesic,
    HyperbolicChart,
    HyperbolicAnnulusDirect,
    HyperbolicAnnulusClosedForm,
}

impl BoundId {
    pub fn name(self) -> &'static str {
        match self {
            BoundId::MainTheorem => "main-theorem",
            BoundId::SphereGeodesic => "sphere-geodesic",
            BoundId::SphereChart => "sphere-chart",
            BoundId::HyperbolicGeodesic => "hyperbolic-geodesic",
            BoundId::HyperbolicChart => "hyperbolic-chart",
            BoundId::HyperbolicAnnulusDirect => "hyperbolic-annulus-direct",
            BoundId::HyperbolicAnnulusClosedForm => "hyperbolic-annulus-closed-form",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    GreaterEq,
    LessEq,
}

/// One evaluated inequality `lhs ⋛ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub id: BoundId,
    pub lhs: f64,
    pub rhs: f64,
    pub comparison: Comparison,
    pub satisfied: bool,
    pub applicable: bool,
    pub reason: Option<&'static str>,
    /// The inequality in words.
    pub formula: &'static str,
}

impl BoundReport {
    fn new(id: BoundId, lhs: f64, rhs: f64, formula: &'static str) -> Self {
        Self::with_comparison(id, lhs, rhs, Comparison::GreaterEq, formula)
    }

    fn with_comparison(id: BoundId, lhs: f64, rhs: f64, comparison: Comparison, formula: &'static str) -> Self {
        Self {
            id,
            lhs,
            rhs,
            comparison,
            satisfied: compare(lhs, rhs, comparison),
            applicable: true,
            reason: None,
            formula,
        }
    }

    fn inapplicable(mut self, reason: &'static str) -> Self {
        self.applicable = false;
        self.reason = Some(reason);
        self
    }

    /// `lhs - rhs` for `≥` bounds and `rhs - lhs` for `≤` bounds.
    pub fn margin(&self) -> f64 {
        match self.comparison {
            Comparison::GreaterEq => self.lhs - self.rhs,
            Comparison::LessEq => self.rhs - self.lhs,
        }
    }
}

fn compare(lhs: f64, rhs: f64, cmp: Comparison) -> bool {
    let (big, small) = match cmp {
        Comparison::GreaterEq => (lhs, rhs),
        Comparison::LessEq => (rhs, lhs),
    };
    if big.is_nan() || small.is_nan() {
        return false;
    }
    if small == f64::INFINITY {
        return big == f64::INFINITY;
    }
    big >= small - TIE_TOLERANCE
}

/// Two equivalent forms of the same inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub geodesic: BoundReport,
    pub chart: BoundReport,
}

impl BoundPair {
    pub fn agree(&self) -> bool {
        self.geodesic.satisfied == self.chart.satisfied
    }

    pub fn satisfied(&self) -> bool {
        self.geodesic.satisfied
    }

    pub fn applicable(&self) -> bool {
        self.geodesic.applicable
    }
}

/// Target annulus given by chart radii or by geodesic radii about the base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnnulusSpec {
    Chart { inner: f64, outer: f64 },
    Geodesic { rho0: f64, rho1: f64 },
}

/// Both descriptions of a target annulus: geodesic radii `ρ` and chart radii `ϱ = g(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedAnnulus {
    pub rho0: f64,
    pub rho1: f64,
    pub varrho0: f64,
    pub varrho1: f64,
}

impl AnnulusSpec {
    /// Converts to both geodesic and chart radii. Equal radii are accepted
    /// (a degenerate annulus); reversed ones are not.
    pub fn resolve(&self, profile: &GeodesicProfile) -> Result<ResolvedAnnulus> {
        let out = match *self {
            AnnulusSpec::Chart { inner, outer } => ResolvedAnnulus {
                rho0: profile.omega(inner)?,
                rho1: profile.omega(outer)?,
                varrho0: inner,
                varrho1: outer,
            },
            AnnulusSpec::Geodesic { rho0, rho1 } => ResolvedAnnulus {
                rho0,
                rho1,
                varrho0: profile.g(rho0)?,
                varrho1: profile.g(rho1)?,
            },
        };
        if !(out.rho0 > 0.0) {
            return Err(Error::Domain { what: "rho0", value: out.rho0 });
        }
        if !(out.rho1 >= out.rho0) {
            return Err(Error::Domain { what: "rho1", value: out.rho1 });
        }
        Ok(out)
    }
}

fn check_r1(r1: f64) -> Result<f64> {
    if !(r1 > 0.0 && r1 <= 1.0) {
        return Err(Error::Domain { what: "r1", value: r1 });
    }
    let l = r1.ln();
    Ok(l * l)
}

/// `2 r₁ / (1 + r₁²)`, the largest inner radius of a Euclidean harmonic image of `A(r₁, 1)`.
pub fn euclid_nitsche(r1: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r1) {
        return Err(Error::Domain { what: "r1", value: r1 });
    }
    Ok(2.0 * r1 / (1.0 + r1 * r1))
}

/// `1 / (1 + (r₁ log r₁)² / 2)`.
pub fn euclid_weitsman(r1: f64) -> Result<f64> {
    if !(r1 > 0.0 && r1 <= 1.0) {
        return Err(Error::Domain { what: "r1", value: r1 });
    }
    let m = r1 * r1.ln();
    Ok(1.0 / (1.0 + 0.5 * m * m))
}

/// `1 / (1 + log² r₁ / 2)`.
pub fn euclid_kalaj(r1: f64) -> Result<f64> {
    Ok(1.0 / (1.0 + 0.5 * check_r1(r1)?))
}

/// `F(ϱ) = h(ϱ²) (1/2 + ϱ² h'(ϱ²) / h(ϱ²))`.
fn growth_factor(metric: &RadialMetric, varrho: f64) -> Result<f64> {
    let t = varrho * varrho;
    Ok(metric.density(t)? * (0.5 + t * metric.log_derivative(t)?))
}

/// `ρ₁/ρ₀ ≥ 1 + (ϱ₀/ρ₀) F(ϱ) log² r₁` for a metric centred at the origin,
/// where `ϱ = ϱ₀` if the curvature is non-positive on the annulus and
/// `ϱ = ϱ₁` if it is non-negative.
pub fn main_theorem_rhs(metric: &RadialMetric, spec: AnnulusSpec, r1: f64) -> Result<BoundReport> {
    if matches!(metric.kind(), MetricKind::HyperbolicAnnulus { .. }) {
        return Err(Error::UnsupportedMetric);
    }
    let log2 = check_r1(r1)?;
    let prof = profile(metric)?;
    let a = spec.resolve(&prof)?;
    let (lo, hi) = (a.varrho0 * a.varrho0, a.varrho1 * a.varrho1);
    let sign = if hi > lo {
        metric.classify_curvature(lo, hi, 64)?
    } else {
        metric.classify_curvature(lo, lo * (1.0 + 1e-6) + 1e-9, 3)?
    };
    let varrho = match sign {
        CurvatureSign::Negative | CurvatureSign::Zero => a.varrho0,
        CurvatureSign::Positive => a.varrho1,
        CurvatureSign::Indefinite => return Err(Error::IndefiniteCurvature { lo, hi }),
    };
    let factor = growth_factor(metric, varrho)?;
    let report = BoundReport::new(
        BoundId::MainTheorem,
        a.rho1 / a.rho0,
        1.0 + a.varrho0 / a.rho0 * factor * log2,
        "rho1/rho0 >= 1 + (varrho0/rho0) h(v^2) (1/2 + v^2 h'(v^2)/h(v^2)) log^2 r1",
    );
    if sign == CurvatureSign::Positive && factor <= TIE_TOLERANCE {
        return Ok(report.inapplicable("growth factor at the outer radius is not positive"));
    }
    Ok(report)
}

/// Spherical bound in geodesic form `ρ₁/ρ₀ ≥ 1 + sin(2ρ₁)/(4ρ₁) log² r₁` and
/// chart form `atan σ / atan τ ≥ 1 + σ(1 - σ²)/(2(1 + σ²)² atan σ) log² r₁`.
/// Only applicable inside a hemisphere, `ρ₁ < π/2`.
pub fn riemann_bound(spec: AnnulusSpec, r1: f64) -> Result<BoundPair> {
    let log2 = check_r1(r1)?;
    let a = spec.resolve(&profile(&RadialMetric::sphere())?)?;
    let (tau, sigma) = (a.varrho0, a.varrho1);
    let geodesic = BoundReport::new(
        BoundId::SphereGeodesic,
        a.rho1 / a.rho0,
        1.0 + (2.0 * a.rho1).sin() / (4.0 * a.rho1) * log2,
        "rho1/rho0 >= 1 + sin(2 rho1)/(4 rho1) log^2 r1",
    );
    let (at, as_) = (tau.atan(), sigma.atan());
    let s2 = 1.0 + sigma * sigma;
    let chart = BoundReport::new(
        BoundId::SphereChart,
        as_ / at,
        1.0 + sigma * (1.0 - sigma) * (1.0 + sigma) / (2.0 * s2 * s2 * as_) * log2,
        "atan(sigma)/atan(tau) >= 1 + sigma (1 - sigma^2)/(2 (1 + sigma^2)^2 atan(sigma)) log^2 r1",
    );
    if !(a.rho1 < 0.5 * PI) {
        let why = "outer circle is not inside a hemisphere";
        return Ok(BoundPair { geodesic: geodesic.inapplicable(why), chart: chart.inapplicable(why) });
    }
    Ok(BoundPair { geodesic, chart })
}

/// `h₀(σ, τ) = exp(-sqrt(2(1 + σ²)² atan σ (atan σ - atan τ) / (σ(1 - σ²) atan τ)))`,
/// the smallest `r₁` allowed by the spherical bound for the chart annulus `A(τ, σ)`.
pub fn riemann_r_lower(sigma: f64, tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau <= sigma) {
        return Err(Error::Domain { what: "tau", value: tau });
    }
    if !(sigma < 1.0) {
        return Err(Error::Domain { what: "sigma", value: sigma });
    }
    let (at, as_) = (tau.atan(), sigma.atan());
    let s2 = 1.0 + sigma * sigma;
    let q = 2.0 * s2 * s2 * as_ * (as_ - at) / (sigma * (1.0 - sigma) * (1.0 + sigma) * at);
    Ok((-q.sqrt()).exp())
}

/// Upper bound `(1/π) sqrt((ρ₁ - ρ₀)/ρ₀ · ρ₁ / sin 2ρ₁)` for the conformal
/// modulus of a domain annulus mapped into the spherical annulus `ρ₀ < d < ρ₁`.
pub fn cmc_modulus_bound(rho0: f64, rho1: f64) -> Result<f64> {
    if !(rho0 > 0.0) {
        return Err(Error::Domain { what: "rho0", value: rho0 });
    }
    if !(rho1 >= rho0) {
        return Err(Error::Domain { what: "rho1", value: rho1 });
    }
    if !(rho1 < 0.5 * PI) {
        return Err(Error::Domain { what: "rho1", value: rho1 });
    }
    Ok(((rho1 - rho0) / rho0 * rho1 / (2.0 * rho1).sin()).sqrt() / PI)
}

/// Hyperbolic bound in geodesic form `ρ₁/ρ₀ ≥ 1 + sinh(2ρ₀)/(4ρ₀) log² r₁`
/// and chart form `log((1+ϱ₁)/(1-ϱ₁) : (1+ϱ₀)/(1-ϱ₀)) ≥ ϱ₀(1 + ϱ₀²)/(1 - ϱ₀²)² log² r₁`.
pub fn hyperbolic_bound(spec: AnnulusSpec, r1: f64) -> Result<BoundPair> {
    let log2 = check_r1(r1)?;
    let a = spec.resolve(&profile(&RadialMetric::hyperbolic_disk())?)?;
    let (v0, v1) = (a.varrho0, a.varrho1);
    let geodesic = BoundReport::new(
        BoundId::HyperbolicGeodesic,
        a.rho1 / a.rho0,
        1.0 + (2.0 * a.rho0).sinh() / (4.0 * a.rho0) * log2,
        "rho1/rho0 >= 1 + sinh(2 rho0)/(4 rho0) log^2 r1",
    );
    let d = (1.0 - v0) * (1.0 + v0);
    let chart = BoundReport::new(
        BoundId::HyperbolicChart,
        2.0 * (v1.atanh() - v0.atanh()),
        v0 * (1.0 + v0 * v0) / (d * d) * log2,
        "log((1+v1)/(1-v1) : (1+v0)/(1-v0)) >= v0 (1 + v0^2)/(1 - v0^2)^2 log^2 r1",
    );
    Ok(BoundPair { geodesic, chart })
}

/// Smallest `r₁` allowed by [`hyperbolic_bound`] for the chart annulus `A(τ, σ)`.
pub fn hyperbolic_r_lower(sigma: f64, tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau <= sigma && sigma < 1.0) {
        return Err(Error::Domain { what: "tau", value: tau });
    }
    let d = (1.0 - tau) * (1.0 + tau);
    let coef = tau * (1.0 + tau * tau) / (d * d);
    let span = 2.0 * (sigma.atanh() - tau.atanh());
    Ok((-(span / coef).sqrt()).exp())
}

/// Bound for the hyperbolic annulus `A(1/R, R)` with geodesic radii measured
/// from the unit circle: `ρ₁ - ρ₀ ≥ ϱ₀ (h_R(ϱ₀²)/2 + h_R'(ϱ₀²) ϱ₀²) log² r₁`.
/// The `geodesic` report evaluates this directly from the density; the
/// `chart` report uses its closed form `π² sinh(2ρ₀) / (16 log² R) log² r₁`.
pub fn hyperbolic_annulus_bound(big_r: f64, rho0: f64, rho1: f64, r1: f64) -> Result<BoundPair> {
    let log2 = check_r1(r1)?;
    let metric = RadialMetric::hyperbolic_annulus(big_r)?;
    let a = AnnulusSpec::Geodesic { rho0, rho1 }.resolve(&profile(&metric)?)?;
    let v0 = a.varrho0;
    let t = v0 * v0;
    let direct_coef = v0 * (0.5 * metric.density(t)? + metric.density_prime(t)? * t);
    let lhs = a.rho1 - a.rho0;
    let direct = BoundReport::new(
        BoundId::HyperbolicAnnulusDirect,
        lhs,
        direct_coef * log2,
        "rho1 - rho0 >= v0 (h_R(v0^2)/2 + h_R'(v0^2) v0^2) log^2 r1",
    );
    let closed = BoundReport::new(
        BoundId::HyperbolicAnnulusClosedForm,
        lhs,
        hyperbolic_annulus_coefficient(big_r, rho0)? * log2,
        "rho1 - rho0 >= pi^2 sinh(2 rho0)/(16 log^2 R) log^2 r1",
    );
    Ok(BoundPair { geodesic: direct, chart: closed })
}

/// `π² sinh(2ρ₀) / (16 log² R)`; equal to `π² sec θ tan θ / (8 log² R)` with
/// `θ = π log ϱ₀ / (2 log R)`.
pub fn hyperbolic_annulus_coefficient(big_r: f64, rho0: f64) -> Result<f64> {
    if !(big_r > 1.0) {
        return Err(Error::Domain { what: "R", value: big_r });
    }
    let l = big_r.ln();
    Ok(PI * PI * (2.0 * rho0).sinh() / (16.0 * l * l))
}

/// The coefficient
/// `ϱ₀ sec θ (log R - 2ϱ₀ log R + π ϱ₀ tan θ) π / (4 log² R)`, `θ = π log ϱ₀ / (2 log R)`,
/// kept for comparison with [`hyperbolic_annulus_coefficient`]; the two
/// differ in general.
pub fn hyperbolic_annulus_alternate_coefficient(big_r: f64, varrho0: f64) -> Result<f64> {
    if !(big_r > 1.0) {
        return Err(Error::Domain { what: "R", value: big_r });
    }
    let l = big_r.ln();
    let th = PI * varrho0.ln() / (2.0 * l);
    Ok(varrho0 / th.cos() * (l - 2.0 * varrho0 * l + PI * varrho0 * th.tan()) * PI / (4.0 * l * l))
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 0.5) {
        return Err(Error::Domain { what: "s", value: s });
    }
    Ok(())
}

/// Inner radius of the extremal hyperbolic map onto `A(1 - 2s, 1 - s)`.
pub fn f1(s: f64) -> Result<f64> {
    check_s(s)?;
    extremal_inner_radius(Surface::Hyperbolic, 1.0 - 2.0 * s, 1.0 - s)
}

/// `exp(-sqrt((1 - τ²)² log((2 - s)/(1 - s)) / ((1 + τ²) τ)))`, `τ = 1 - 2s`.
pub fn f2(s: f64) -> Result<f64> {
    check_s(s)?;
    let tau = 1.0 - 2.0 * s;
    let d = 4.0 * s * (1.0 - s);
    let arg = d * d * ((2.0 - s) / (1.0 - s)).ln() / ((1.0 + tau * tau) * tau);
    Ok((-arg.sqrt()).exp())
}
