use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::params::{default_quad, RadialMapParams, StableRadicand};
use crate::numeric::hermite::{Jet2, QuinticHermite};
use crate::numeric::quad::QuadConfig;
use crate::{Complex64, Error, Result};

/// A radial harmonic map `w(z) = g(|z|) z / |z|` of `A(r_in, 1)` onto `A(τ, σ)`.
///
/// The profile is stored as `y(x)`, `x = log r`, on a quintic Hermite table
/// whose node slopes and curvatures come from the first integral
/// `y'^2 = R(y)` and `y'' = R'(y) / 2`.
#[derive(Debug, Clone)]
pub struct RadialHarmonicMap {
    params: RadialMapParams,
    radicand: StableRadicand,
    table: QuinticHermite,
    log_inner: f64,
    reversed: bool,
    quad: QuadConfig,
}

/// Tabulates the radial harmonic map with `params` on `table_size` nodes.
pub fn build_map(params: &RadialMapParams, table_size: usize) -> Result<RadialHarmonicMap> {
    build_map_with(params, table_size, &default_quad())
}

pub fn build_map_with(params: &RadialMapParams, table_size: usize, cfg: &QuadConfig) -> Result<RadialHarmonicMap> {
    if table_size < 16 {
        return Err(Error::InvalidParameter("table_size must be at least 16"));
    }
    let rad = params.radicand();
    let (tau, sigma) = (params.tau(), params.sigma());
    let n = table_size;
    let u_max = rad.u_of(sigma);

    // Nodes in u = sqrt(y - τ): uniform near the extremal constant, where
    // y(x) - τ is quadratic in x, and geometric in y otherwise.
    let us: Vec<f64> = if params.near_extremal() {
        (0..n).map(|k| u_max * k as f64 / (n - 1) as f64).collect()
    } else {
        let ratio = (sigma / tau).ln();
        (0..n)
            .map(|k| match k {
                0 => 0.0,
                _ if k == n - 1 => u_max,
                _ => (tau * ((ratio * k as f64 / (n - 1) as f64).exp() - 1.0)).sqrt(),
            })
            .collect()
    };

    let mut cumulative = Vec::with_capacity(n);
    cumulative.push(0.0);
    for w in us.windows(2) {
        let step = rad.log_radius_span_u(w[0], w[1], cfg)?;
        cumulative.push(cumulative[cumulative.len() - 1] + step);
    }
    let total = cumulative[n - 1];
    let x: Vec<f64> = cumulative.iter().map(|s| s - total).collect();
    let data: Vec<Jet2> = us
        .iter()
        .zip(x.iter())
        .map(|(&u, _)| {
            let y = if u == u_max { sigma } else { tau + u * u };
            Jet2 { value: y, d1: rad.at_u(u).max(0.0).sqrt(), d2: 0.5 * rad.prime_at_y(y) }
        })
        .collect();
    let table = QuinticHermite::new(x, data).ok_or(Error::InvalidParameter("table nodes are not increasing"))?;
    Ok(RadialHarmonicMap {
        params: *params,
        radicand: rad,
        table,
        log_inner: -total,
        reversed: false,
        quad: *cfg,
    })
}

impl RadialHarmonicMap {
    pub fn params(&self) -> &RadialMapParams {
        &self.params
    }

    pub fn inner_radius(&self) -> f64 {
        self.log_inner.exp()
    }

    pub fn log_inner_radius(&self) -> f64 {
        self.log_inner
    }

    /// Profile table: abscissae `log r`, values `y` with exact derivatives.
    pub fn table(&self) -> &QuinticHermite {
        &self.table
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// The map with decreasing profile, `z ↦ w(r_in / z̄)`. It sends
    /// `|z| = r_in` to `|w| = σ` and `|z| = 1` to `|w| = τ`.
    pub fn reversed(&self) -> Self {
        Self { reversed: !self.reversed, ..self.clone() }
    }

    /// Coefficient `c` of the Hopf differential `c / z^2` (in the target
    /// metric) of this map.
    pub fn hopf_coefficient(&self) -> f64 {
        self.params.c()
    }

    fn table_x(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain { what: "r", value: r });
        }
        let s = r.ln();
        let slack = 1e-12 * (1.0 - self.log_inner).max(1.0);
        if s < self.log_inner - slack || s > slack {
            return Err(Error::Domain { what: "r", value: r });
        }
        let s = s.clamp(self.log_inner, 0.0);
        Ok(if self.reversed { self.log_inner - s } else { s })
    }

    /// `(y, dy/ds, d^2y/ds^2)` at `s = log r`, from the interpolant.
    pub fn profile_jet(&self, r: f64) -> Result<Jet2> {
        let x = self.table_x(r)?;
        let j = self.table.eval(x);
        Ok(if self.reversed { Jet2 { d1: -j.d1, ..j } } else { j })
    }

    /// Same as [`profile_jet`](Self::profile_jet) with the derivatives taken
    /// from the first integral at the interpolated value.
    pub fn profile_jet_first_integral(&self, r: f64) -> Result<Jet2> {
        let x = self.table_x(r)?;
        let y = self.table.eval(x).value;
        let d1 = self.radicand.at_y(y).max(0.0).sqrt();
        let d2 = 0.5 * self.radicand.prime_at_y(y);
        Ok(Jet2 { value: y, d1: if self.reversed { -d1 } else { d1 }, d2 })
    }

    /// `g(r)`, the image radius of the circle `|z| = r`.
    pub fn g(&self, r: f64) -> Result<f64> {
        Ok(self.profile_jet(r)?.value)
    }

    pub fn g_prime(&self, r: f64) -> Result<f64> {
        Ok(self.profile_jet(r)?.d1 / r)
    }

    /// Inverse profile `q(y) = exp(-∫_y^σ dz / sqrt(R(z)))` by direct
    /// quadrature, independent of the table.
    pub fn radius_of(&self, y: f64) -> Result<f64> {
        let (tau, sigma) = (self.params.tau(), self.params.sigma());
        if !(y >= tau && y <= sigma) {
            return Err(Error::Domain { what: "y", value: y });
        }
        let x = -self.radicand.log_radius_span(y, sigma, &self.quad)?;
        Ok(if self.reversed { (self.log_inner - x).exp() } else { x.exp() })
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        let g = self.g(r)?;
        Ok(z * (g / r))
    }

    fn residual_from(&self, j: Jet2) -> f64 {
        let e = self.params.surface().sign();
        let y = j.value;
        (j.d2 - y - 2.0 * e * y * (j.d1 * j.d1 - y * y) / (1.0 + e * y * y)).abs()
    }

    /// Left side of the radial equation `r^2 g'' + r g' - g ∓ 2g (r^2 g'^2 - g^2) / (1 ± g^2)`
    /// with `r g'` and `r^2 g'' + r g'` taken from the first integral.
    pub fn ode_residual(&self, r: f64) -> Result<f64> {
        Ok(self.residual_from(self.profile_jet_first_integral(r)?))
    }

    /// Same equation with all derivatives taken from the interpolant.
    pub fn ode_residual_interpolated(&self, r: f64) -> Result<f64> {
        Ok(self.residual_from(self.profile_jet(r)?))
    }

    /// `(r g')^2 - R(g)` from the interpolant.
    pub fn first_integral_defect(&self, r: f64) -> Result<f64> {
        let j = self.profile_jet(r)?;
        Ok(j.d1 * j.d1 - self.radicand.at_y(j.value))
    }

    /// `n` radii strictly inside `(r_in, 1)`, equally spaced in `log r`.
    pub fn interior_radii(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|i| (self.log_inner * (1.0 - i as f64 / (n + 1) as f64)).exp()).collect()
    }
}
