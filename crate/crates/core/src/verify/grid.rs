use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::radial_metric::{profile, MetricKind, RadialMetric};
use crate::{Complex64, Error, Result};

/// Polar lattice on `r_in <= |z| <= r_out`, uniform in `log r` (including
/// both boundary circles) and periodic in `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarGrid {
    r_in: f64,
    r_out: f64,
    n_r: usize,
    n_theta: usize,
}

impl PolarGrid {
    pub fn new(r_in: f64, r_out: f64, n_r: usize, n_theta: usize) -> Result<Self> {
        if !(r_in > 0.0 && r_out > r_in && r_out.is_finite()) {
            return Err(Error::Domain { what: "r_in", value: r_in });
        }
        if n_r < 8 || n_theta < 8 {
            return Err(Error::InvalidParameter("grid needs at least 8 nodes in each direction"));
        }
        Ok(Self { r_in, r_out, n_r, n_theta })
    }

    pub fn r_in(&self) -> f64 {
        self.r_in
    }

    pub fn r_out(&self) -> f64 {
        self.r_out
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn ds(&self) -> f64 {
        (self.r_out / self.r_in).ln() / (self.n_r - 1) as f64
    }

    pub fn dtheta(&self) -> f64 {
        2.0 * PI / self.n_theta as f64
    }

    pub fn log_radius(&self, i: usize) -> f64 {
        if i == self.n_r - 1 {
            self.r_out.ln()
        } else {
            self.r_in.ln() + i as f64 * self.ds()
        }
    }

    pub fn radius(&self, i: usize) -> f64 {
        match i {
            0 => self.r_in,
            _ if i == self.n_r - 1 => self.r_out,
            _ => self.log_radius(i).exp(),
        }
    }

    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * self.dtheta()
    }

    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        Complex64::from_polar(self.radius(i), self.theta(j))
    }

    pub fn len(&self) -> usize {
        self.n_r * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same annulus with both node counts doubled (spacing halved in `θ`
    /// and, up to the shared end nodes, in `log r`).
    pub fn refined(&self) -> Self {
        Self { n_r: 2 * self.n_r - 1, n_theta: 2 * self.n_theta, ..*self }
    }

    pub(crate) fn index(&self, i: usize, j: usize) -> usize {
        i * self.n_theta + j
    }
}

/// Samples `w` of a map at the nodes of a [`PolarGrid`], with the target metric.
#[derive(Debug, Clone)]
pub struct GridMap {
    grid: PolarGrid,
    metric: RadialMetric,
    values: Vec<Complex64>,
}

impl GridMap {
    /// Values are stored row by row: all angles of the innermost circle first.
    pub fn from_values(grid: PolarGrid, metric: RadialMetric, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter("sample count does not match the grid"));
        }
        let domain = metric.t_domain();
        for w in &values {
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(Error::Domain { what: "sample", value: f64::NAN });
            }
            let t = w.norm_sqr();
            if !domain.contains(t) {
                return Err(Error::Domain { what: "|w|^2", value: t });
            }
        }
        Ok(Self { grid, metric, values })
    }

    pub fn sample<F>(grid: PolarGrid, metric: RadialMetric, mut f: F) -> Result<Self>
    where
        F: FnMut(Complex64) -> Result<Complex64>,
    {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.n_r {
            for j in 0..grid.n_theta {
                values.push(f(grid.node(i, j))?);
            }
        }
        Self::from_values(grid, metric, values)
    }

    pub fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    pub fn metric(&self) -> &RadialMetric {
        &self.metric
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[self.grid.index(i, j)]
    }

    /// Samples shifted by `k` nodes in `θ`: the map `z ↦ w(e^{ikΔθ} z)`.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.grid.n_theta;
        let mut values = Vec::with_capacity(self.values.len());
        for i in 0..self.grid.n_r {
            for j in 0..n {
                values.push(self.at(i, (j + k) % n));
            }
        }
        Self { values, ..self.clone() }
    }

    /// `(w, w_s, w_θ, w_ss, w_θθ)` by central differences, `s = log r`.
    /// One-sided second-order formulas are used on the boundary circles.
    fn derivs(&self, i: usize, j: usize) -> Derivs {
        let g = &self.grid;
        let (ds, dt) = (g.ds(), g.dtheta());
        let n = g.n_theta;
        let w = self.at(i, j);
        let (jp, jm) = ((j + 1) % n, (j + n - 1) % n);
        let wt = (self.at(i, jp) - self.at(i, jm)) / (2.0 * dt);
        let wtt = (self.at(i, jp) - w * 2.0 + self.at(i, jm)) / (dt * dt);
        let (ws, wss) = if i == 0 {
            let (w1, w2, w3) = (self.at(1, j), self.at(2, j), self.at(3, j));
            ((w * -3.0 + w1 * 4.0 - w2) / (2.0 * ds), (w * 2.0 - w1 * 5.0 + w2 * 4.0 - w3) / (ds * ds))
        } else if i == g.n_r - 1 {
            let (w1, w2, w3) = (self.at(i - 1, j), self.at(i - 2, j), self.at(i - 3, j));
            ((w * 3.0 - w1 * 4.0 + w2) / (2.0 * ds), (w * 2.0 - w1 * 5.0 + w2 * 4.0 - w3) / (ds * ds))
        } else {
            let (wp, wm) = (self.at(i + 1, j), self.at(i - 1, j));
            ((wp - wm) / (2.0 * ds), (wp - w * 2.0 + wm) / (ds * ds))
        };
        Derivs { w, ws, wt, wss, wtt, r: g.radius(i), theta: g.theta(j) }
    }
}

#[derive(Debug, Clone, Copy)]
struct Derivs {
    w: Complex64,
    ws: Complex64,
    wt: Complex64,
    wss: Complex64,
    wtt: Complex64,
    r: f64,
    theta: f64,
}

impl Derivs {
    fn wz(&self) -> Complex64 {
        Complex64::from_polar(0.5 / self.r, -self.theta) * (self.ws - Complex64::i() * self.wt)
    }

    fn wzb(&self) -> Complex64 {
        Complex64::from_polar(0.5 / self.r, self.theta) * (self.ws + Complex64::i() * self.wt)
    }

    fn wzzb(&self) -> Complex64 {
        (self.wss + self.wtt) / (4.0 * self.r * self.r)
    }

    /// `w_z w_z̄ = (w_s^2 + w_θ^2) / (4 r^2)`.
    fn wz_wzb(&self) -> Complex64 {
        (self.ws * self.ws + self.wt * self.wt) / (4.0 * self.r * self.r)
    }
}

/// Residual of the harmonic map equation at interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// `max |w_zz̄ + 2 (h'/h)(|w|^2) w̄ w_z w_z̄|`.
    pub max_abs: f64,
    /// Same with each residual weighted by `h(|w|^2)`, which is invariant
    /// under isometries of the target.
    pub max_metric_norm: f64,
    /// Largest magnitude of either term of the equation.
    pub scale: f64,
    /// `|residual|` at interior nodes, row by row.
    pub field: Vec<f64>,
}

impl ResidualReport {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.max_abs / self.scale
        } else {
            self.max_abs
        }
    }

    pub(crate) fn accumulate(&mut self, res: Complex64, a: Complex64, b: Complex64, h: f64) {
        let m = res.norm();
        self.max_abs = self.max_abs.max(m);
        self.max_metric_norm = self.max_metric_norm.max(h * m);
        self.scale = self.scale.max(a.norm()).max(b.norm());
        self.field.push(m);
    }

    pub(crate) fn empty() -> Self {
        Self { max_abs: 0.0, max_metric_norm: 0.0, scale: 0.0, field: Vec::new() }
    }
}

/// `w_zz̄ + (log ρ^2)_w(w) w_z w_z̄` from central differences at interior nodes.
pub fn pde_residual(gm: &GridMap) -> ResidualReport {
    let g = gm.grid;
    let mut out = ResidualReport::empty();
    for i in 1..g.n_r - 1 {
        for j in 0..g.n_theta {
            let d = gm.derivs(i, j);
            let t = d.w.norm_sqr();
            let lap = d.wzzb();
            let nonlin = d.w.conj() * d.wz_wzb() * (2.0 * gm.metric.log_derivative(t).unwrap_or(f64::NAN));
            out.accumulate(lap + nonlin, lap, nonlin, gm.metric.h_raw(t));
        }
    }
    out
}

/// `Ψ = h^2(|w|^2) w_z conj(w_z̄)` at every node.
fn hopf_field(gm: &GridMap) -> Vec<Complex64> {
    let g = gm.grid;
    let mut psi = Vec::with_capacity(g.len());
    for i in 0..g.n_r {
        for j in 0..g.n_theta {
            let d = gm.derivs(i, j);
            let h = gm.metric.h_raw(d.w.norm_sqr());
            psi.push(d.wz() * d.wzb().conj() * (h * h));
        }
    }
    psi
}

/// `max |∂Ψ/∂z̄|` at interior nodes for the field `psi` on `grid`.
pub(crate) fn zbar_derivative_max(grid: &PolarGrid, psi: &[Complex64]) -> f64 {
    let (ds, dt) = (grid.ds(), grid.dtheta());
    let n = grid.n_theta;
    let mut max = 0.0f64;
    for i in 1..grid.n_r - 1 {
        for j in 0..n {
            let at = |i: usize, j: usize| psi[grid.index(i, j)];
            let ps = (at(i + 1, j) - at(i - 1, j)) / (2.0 * ds);
            let pt = (at(i, (j + 1) % n) - at(i, (j + n - 1) % n)) / (2.0 * dt);
            let d = Complex64::from_polar(0.5 / grid.radius(i), grid.theta(j)) * (ps + Complex64::i() * pt);
            max = max.max(d.norm());
        }
    }
    max
}

/// Largest `|∂Ψ/∂z̄|` of the Hopf differential, all derivatives by differences.
pub fn hopf_residual(gm: &GridMap) -> f64 {
    zbar_derivative_max(&gm.grid, &hopf_field(gm))
}

/// Trapezoidal weights in `s` (end nodes halved).
fn s_weight(grid: &PolarGrid, i: usize) -> f64 {
    if i == 0 || i == grid.n_r - 1 {
        0.5 * grid.ds()
    } else {
        grid.ds()
    }
}

/// `∫ h^2(|w|^2) (|w_z|^2 + |w_z̄|^2) dx dy` over the annulus.
pub fn energy(gm: &GridMap) -> f64 {
    let g = gm.grid;
    let mut total = 0.0;
    for i in 0..g.n_r {
        let r = g.radius(i);
        let mut row = 0.0;
        for j in 0..g.n_theta {
            let d = gm.derivs(i, j);
            let h = gm.metric.h_raw(d.w.norm_sqr());
            row += h * h * (d.wz().norm_sqr() + d.wzb().norm_sqr());
        }
        total += row * g.dtheta() * r * r * s_weight(&g, i);
    }
    total
}

/// Phase increment `arg(b / a)` in `(-π, π]`.
fn phase_step(a: Complex64, b: Complex64) -> f64 {
    (b * a.conj()).arg()
}

/// `∫ |∇Θ|^2 dx dy` for `Θ = arg w`, from phase increments between nodes.
///
/// All circles must carry the same winding number of `w`, and no increment
/// between neighbouring nodes may reach `π/2`.
pub fn theta_energy(gm: &GridMap) -> Result<f64> {
    let g = gm.grid;
    if gm.values.iter().any(|w| w.norm() == 0.0) {
        return Err(Error::PhaseUnwrap("map vanishes at a node"));
    }
    let n = g.n_theta;
    let guard = 0.5 * PI;
    let mut winding = None;
    for i in 0..g.n_r {
        let mut total = 0.0;
        for j in 0..n {
            let step = phase_step(gm.at(i, j), gm.at(i, (j + 1) % n));
            if step.abs() >= guard {
                return Err(Error::PhaseUnwrap("angular phase increment too large for the grid"));
            }
            total += step;
        }
        let k = (total / (2.0 * PI)).round();
        if (total - 2.0 * PI * k).abs() > 1e-6 {
            return Err(Error::PhaseUnwrap("angular phase does not close up"));
        }
        match winding {
            None => winding = Some(k),
            Some(w) if w != k => return Err(Error::PhaseUnwrap("winding differs between circles")),
            _ => {}
        }
    }
    let (ds, dt) = (g.ds(), g.dtheta());
    let mut total = 0.0;
    for i in 0..g.n_r {
        let mut row = 0.0;
        for j in 0..n {
            let tt = phase_step(gm.at(i, (j + n - 1) % n), gm.at(i, (j + 1) % n)) / (2.0 * dt);
            let step = |a: usize, b: usize| phase_step(gm.at(a, j), gm.at(b, j));
            let ts = if i == 0 {
                (4.0 * step(0, 1) - step(0, 2)) / (2.0 * ds)
            } else if i == g.n_r - 1 {
                (4.0 * step(i - 1, i) - step(i - 2, i)) / (2.0 * ds)
            } else {
                step(i - 1, i + 1) / (2.0 * ds)
            };
            for s in [tt, ts] {
                if (s * ds.max(dt)).abs() >= guard {
                    return Err(Error::PhaseUnwrap("radial phase increment too large for the grid"));
                }
            }
            row += ts * ts + tt * tt;
        }
        total += row * dt * s_weight(&g, i);
    }
    Ok(total)
}

/// Discrepancy in `Δρ = g(ρ) h(g^2(ρ)) (1 + 2 (h'/h)(g^2(ρ)) g^2(ρ)) |∇Θ|^2`
/// with `ρ` the geodesic distance of `w` from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarLaplacianReport {
    pub max_abs: f64,
    pub scale: f64,
    /// `max |ΔΘ|`.
    pub max_delta_theta: f64,
    /// `min Δρ`; non-negative where `ρ` is subharmonic.
    pub min_laplacian: f64,
}

/// `g h(g^2) (1 + 2 g^2 h'(g^2)/h(g^2))` at chart radius `g`.
pub fn polar_growth(metric: &RadialMetric, g: f64) -> Result<f64> {
    let t = g * g;
    Ok(g * metric.density(t)? * (1.0 + 2.0 * t * metric.log_derivative(t)?))
}

pub fn polar_laplacian_check_grid(gm: &GridMap) -> Result<PolarLaplacianReport> {
    if matches!(gm.metric.kind(), MetricKind::HyperbolicAnnulus { .. } | MetricKind::PuncturedDisk) {
        return Err(Error::UnsupportedBase);
    }
    let prof = profile(&gm.metric)?;
    let g = gm.grid;
    let n = g.n_theta;
    let mut rho = Vec::with_capacity(g.len());
    for w in &gm.values {
        rho.push(prof.omega(w.norm())?);
    }
    let (ds, dt) = (g.ds(), g.dtheta());
    let mut out = PolarLaplacianReport {
        max_abs: 0.0,
        scale: 0.0,
        max_delta_theta: 0.0,
        min_laplacian: f64::INFINITY,
    };
    for i in 1..g.n_r - 1 {
        let r2 = g.radius(i).powi(2);
        for j in 0..n {
            let (jp, jm) = ((j + 1) % n, (j + n - 1) % n);
            let at = |i: usize, j: usize| rho[g.index(i, j)];
            let lap = ((at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (ds * ds)
                + (at(i, jp) - 2.0 * at(i, j) + at(i, jm)) / (dt * dt))
                / r2;
            let w = gm.at(i, j);
            let ph = |a: Complex64, b: Complex64| phase_step(a, b);
            let ts = ph(gm.at(i - 1, j), gm.at(i + 1, j)) / (2.0 * ds);
            let tt = ph(gm.at(i, jm), gm.at(i, jp)) / (2.0 * dt);
            let grad2 = (ts * ts + tt * tt) / r2;
            let theta_lap = ((ph(w, gm.at(i + 1, j)) - ph(gm.at(i - 1, j), w)) / (ds * ds)
                + (ph(w, gm.at(i, jp)) - ph(gm.at(i, jm), w)) / (dt * dt))
                / r2;
            let rhs = polar_growth(&gm.metric, w.norm())? * grad2;
            out.max_abs = out.max_abs.max((lap - rhs).abs());
            out.scale = out.scale.max(rhs.abs()).max(lap.abs());
            out.max_delta_theta = out.max_delta_theta.max(theta_lap.abs());
            out.min_laplacian = out.min_laplacian.min(lap);
        }
    }
    Ok(out)
}

/// Post-composes the samples with an isometry of the target:
/// `e^{iφ}(w - a)/(1 + ā w)` on the sphere, `e^{iφ}(w - a)/(1 - ā w)` on
/// the hyperbolic disk and `e^{iφ} w + a` in the plane.
pub fn isometry_conjugate(gm: &GridMap, a: Complex64, phi: f64) -> Result<GridMap> {
    let rot = Complex64::from_polar(1.0, phi);
    let values = match gm.metric.kind() {
        MetricKind::Euclidean => gm.values.iter().map(|w| Ok(rot * w + a)).collect::<Result<Vec<_>>>()?,
        MetricKind::Sphere | MetricKind::HyperbolicDisk => {
            let e = if gm.metric.kind() == MetricKind::Sphere { 1.0 } else { -1.0 };
            if e < 0.0 && !(a.norm() < 1.0) {
                return Err(Error::Domain { what: "|a|", value: a.norm() });
            }
            let mut out = Vec::with_capacity(gm.values.len());
            for w in &gm.values {
                let den = Complex64::new(1.0, 0.0) + a.conj() * w * e;
                if den.norm() <= 1e-12 * (1.0 + a.norm() * w.norm()) {
                    return Err(Error::Pole);
                }
                out.push(rot * (w - a) / den);
            }
            out
        }
        _ => return Err(Error::UnsupportedMetric),
    };
    GridMap::from_values(gm.grid, gm.metric.clone(), values)
}
