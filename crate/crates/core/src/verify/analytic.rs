use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::grid::{zbar_derivative_max, GridMap, PolarGrid, ResidualReport};
use crate::radial_harmonic::{EuclideanNitscheMap, RadialHarmonicMap, Surface};
use crate::radial_metric::RadialMetric;
use crate::{Complex64, Error, Result};

/// A map value with its Wirtinger derivatives `w_z`, `w_z̄` and `w_zz̄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub w: Complex64,
    pub wz: Complex64,
    pub wzb: Complex64,
    pub wzzb: Complex64,
}

/// A map whose derivatives are available in closed form (or from an
/// interpolant with exact node derivatives).
pub trait AnalyticMap {
    fn jet(&self, z: Complex64) -> Result<Jet>;

    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.jet(z)?.w)
    }
}

impl<M: AnalyticMap + ?Sized> AnalyticMap for &M {
    fn jet(&self, z: Complex64) -> Result<Jet> {
        (**self).jet(z)
    }
}

/// `w = y(s) e^{iθ}` in terms of the profile jet `(y, y_s, y_ss)`.
pub fn radial_jet(z: Complex64, y: f64, ys: f64, yss: f64) -> Jet {
    let r = z.norm();
    let e = z / r;
    Jet {
        w: e * y,
        wz: Complex64::new((ys + y) / (2.0 * r), 0.0),
        wzb: e * e * ((ys - y) / (2.0 * r)),
        wzzb: e * ((yss - y) / (4.0 * r * r)),
    }
}

impl AnalyticMap for RadialHarmonicMap {
    fn jet(&self, z: Complex64) -> Result<Jet> {
        let j = self.profile_jet(z.norm())?;
        Ok(radial_jet(z, j.value, j.d1, j.d2))
    }
}

impl AnalyticMap for EuclideanNitscheMap {
    fn jet(&self, z: Complex64) -> Result<Jet> {
        let (a, b) = self.coefficients();
        let zb = z.conj();
        Ok(Jet {
            w: self.evaluate(z)?,
            wz: Complex64::new(a, 0.0),
            wzb: -(zb * zb).inv() * b,
            wzzb: Complex64::new(0.0, 0.0),
        })
    }
}

/// `w = k z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dilation(pub Complex64);

impl AnalyticMap for Dilation {
    fn jet(&self, z: Complex64) -> Result<Jet> {
        let zero = Complex64::new(0.0, 0.0);
        Ok(Jet { w: self.0 * z, wz: self.0, wzb: zero, wzzb: zero })
    }
}

/// `w = z^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Power(pub i32);

impl AnalyticMap for Power {
    fn jet(&self, z: Complex64) -> Result<Jet> {
        let zero = Complex64::new(0.0, 0.0);
        Ok(Jet { w: z.powi(self.0), wz: z.powi(self.0 - 1) * self.0 as f64, wzb: zero, wzzb: zero })
    }
}

/// `w = e^{i Re z}`: the Gauss map of a cylinder, a map into the equator
/// `|w| = 1` of the sphere chart.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CylinderGauss;

impl AnalyticMap for CylinderGauss {
    fn jet(&self, z: Complex64) -> Result<Jet> {
        let w = Complex64::from_polar(1.0, z.re);
        let half = w * Complex64::new(0.0, 0.5);
        Ok(Jet { w, wz: half, wzb: half, wzzb: -w * 0.25 })
    }
}

/// `w(z) + ε z̄^2`, a non-harmonic perturbation used as a negative control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjSquarePerturbation<M> {
    pub inner: M,
    pub eps: f64,
}

impl<M: AnalyticMap> AnalyticMap for ConjSquarePerturbation<M> {
    fn jet(&self, z: Complex64) -> Result<Jet> {
        let j = self.inner.jet(z)?;
        let zb = z.conj();
        Ok(Jet { w: j.w + zb * zb * self.eps, wzb: j.wzb + zb * (2.0 * self.eps), ..j })
    }
}

/// `T ∘ w` for the target isometry `T(w) = e^{iφ}(w - a)/(1 ± ā w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometric<M> {
    pub inner: M,
    pub surface: Surface,
    pub a: Complex64,
    pub phi: f64,
}

impl<M: AnalyticMap> AnalyticMap for Isometric<M> {
    fn jet(&self, z: Complex64) -> Result<Jet> {
        let j = self.inner.jet(z)?;
        let e = self.surface.sign();
        let rot = Complex64::from_polar(1.0, self.phi);
        let one = Complex64::new(1.0, 0.0);
        let den = one + self.a.conj() * j.w * e;
        if den.norm() <= 1e-12 {
            return Err(Error::Pole);
        }
        let k = rot * (1.0 + e * self.a.norm_sqr());
        let t1 = k / (den * den);
        let t2 = -k * self.a.conj() * (2.0 * e) / (den * den * den);
        Ok(Jet {
            w: rot * (j.w - self.a) / den,
            wz: t1 * j.wz,
            wzb: t1 * j.wzb,
            wzzb: t2 * j.wz * j.wzb + t1 * j.wzzb,
        })
    }
}

/// Exact residual `w_zz̄ + 2 (h'/h)(|w|^2) w̄ w_z w_z̄` from a jet, with its
/// two terms.
pub fn jet_residual(metric: &RadialMetric, j: &Jet) -> Result<(Complex64, Complex64, Complex64)> {
    let t = j.w.norm_sqr();
    let nonlin = j.w.conj() * j.wz * j.wzb * (2.0 * metric.log_derivative(t)?);
    Ok((j.wzzb + nonlin, j.wzzb, nonlin))
}

/// `Ψ = h^2(|w|^2) w_z conj(w_z̄)`.
pub fn hopf_differential(metric: &RadialMetric, j: &Jet) -> Result<Complex64> {
    let h = metric.density(j.w.norm_sqr())?;
    Ok(j.wz * j.wzb.conj() * (h * h))
}

/// Evaluates the jet-based residual at every interior node of `grid`.
pub fn analytic_residual<M: AnalyticMap>(metric: &RadialMetric, map: &M, grid: &PolarGrid) -> Result<ResidualReport> {
    let mut out = ResidualReport::empty();
    for i in 1..grid.n_r() - 1 {
        for j in 0..grid.n_theta() {
            let jet = map.jet(grid.node(i, j))?;
            let (res, a, b) = jet_residual(metric, &jet)?;
            out.accumulate(res, a, b, metric.density(jet.w.norm_sqr())?);
        }
    }
    Ok(out)
}

/// Hopf differential from exact jets, then `max |∂Ψ/∂z̄|` by central differences.
pub fn analytic_hopf_residual<M: AnalyticMap>(metric: &RadialMetric, map: &M, grid: &PolarGrid) -> Result<f64> {
    let mut psi = Vec::with_capacity(grid.len());
    for i in 0..grid.n_r() {
        for j in 0..grid.n_theta() {
            psi.push(hopf_differential(metric, &map.jet(grid.node(i, j))?)?);
        }
    }
    Ok(zbar_derivative_max(grid, &psi))
}

/// Samples an analytic map on a grid.
pub fn sample<M: AnalyticMap>(metric: &RadialMetric, map: &M, grid: PolarGrid) -> Result<GridMap> {
    GridMap::sample(grid, metric.clone(), |z| map.value(z))
}
