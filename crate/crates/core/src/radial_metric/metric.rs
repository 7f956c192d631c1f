use alloc::sync::Arc;
use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::numeric::quad::{integrate, QuadConfig};
use crate::{Error, Result};

type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Tag for the built-in densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricKind {
    Euclidean,
    HyperbolicDisk,
    PuncturedDisk,
    /// Hyperbolic metric of `A(1/R, R)`.
    HyperbolicAnnulus { big_r: f64 },
    Sphere,
    Cigar,
    Custom,
}

/// An interval of admissible `t = |z|^2`. `hi` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TDomain {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl TDomain {
    pub const fn closed_open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_closed: true, hi_closed: false }
    }

    pub const fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_closed { t >= self.lo } else { t > self.lo };
        let below = if self.hi_closed { t <= self.hi } else { t < self.hi };
        above && below
    }

    pub fn contains_closure(&self, t: f64) -> bool {
        t >= self.lo && t <= self.hi
    }
}

#[derive(Clone)]
enum Density {
    Euclidean,
    HyperbolicDisk,
    PuncturedDisk,
    HyperbolicAnnulus { log_r: f64 },
    Sphere,
    Cigar,
    Custom { h: DensityFn, h_prime: DensityFn, domain: TDomain },
}

/// A radially symmetric conformal density `ρ(z) = h(|z|^2)`.
///
/// Instances are immutable; cloning a custom metric shares its closures.
#[derive(Clone)]
pub struct RadialMetric {
    density: Density,
}

impl fmt::Debug for RadialMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialMetric")
            .field("kind", &self.kind())
            .field("t_domain", &self.t_domain())
            .finish()
    }
}

/// Sign of curvature inferred from the monotonicity of `4 t h'(t) / h(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureSign {
    Negative,
    Zero,
    Positive,
    Indefinite,
}

impl RadialMetric {
    pub fn euclidean() -> Self {
        Self { density: Density::Euclidean }
    }

    /// `2 / (1 - |z|^2)` on the unit disk.
    pub fn hyperbolic_disk() -> Self {
        Self { density: Density::HyperbolicDisk }
    }

    /// `1 / (|z| log(1/|z|))` on the punctured unit disk.
    pub fn punctured_disk() -> Self {
        Self { density: Density::PuncturedDisk }
    }

    /// Hyperbolic metric of the annulus `1/R < |z| < R`.
    pub fn hyperbolic_annulus(big_r: f64) -> Result<Self> {
        if !(big_r > 1.0) || !big_r.is_finite() {
            return Err(Error::Domain { what: "R", value: big_r });
        }
        Ok(Self { density: Density::HyperbolicAnnulus { log_r: big_r.ln() } })
    }

    /// Spherical metric `2 / (1 + |z|^2)`, curvature `+1`.
    pub fn sphere() -> Self {
        Self { density: Density::Sphere }
    }

    /// Cigar soliton `1 / sqrt(1 + |z|^2)`.
    pub fn cigar() -> Self {
        Self { density: Density::Cigar }
    }

    /// A user density with analytic `h` and `h'`. The second derivative is
    /// taken by central differences of `h'`.
    pub fn custom<H, HP>(h: H, h_prime: HP, domain: TDomain) -> Self
    where
        H: Fn(f64) -> f64 + Send + Sync + 'static,
        HP: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            density: Density::Custom { h: Arc::new(h), h_prime: Arc::new(h_prime), domain },
        }
    }

    pub fn kind(&self) -> MetricKind {
        match &self.density {
            Density::Euclidean => MetricKind::Euclidean,
            Density::HyperbolicDisk => MetricKind::HyperbolicDisk,
            Density::PuncturedDisk => MetricKind::PuncturedDisk,
            Density::HyperbolicAnnulus { log_r } => MetricKind::HyperbolicAnnulus { big_r: log_r.exp() },
            Density::Sphere => MetricKind::Sphere,
            Density::Cigar => MetricKind::Cigar,
            Density::Custom { .. } => MetricKind::Custom,
        }
    }

    pub fn t_domain(&self) -> TDomain {
        match &self.density {
            Density::Euclidean | Density::Sphere | Density::Cigar => TDomain::closed_open(0.0, f64::INFINITY),
            Density::HyperbolicDisk => TDomain::closed_open(0.0, 1.0),
            Density::PuncturedDisk => TDomain::open(0.0, 1.0),
            Density::HyperbolicAnnulus { log_r } => {
                let r2 = (2.0 * log_r).exp();
                TDomain::open(1.0 / r2, r2)
            }
            Density::Custom { domain, .. } => *domain,
        }
    }

    fn check(&self, t: f64) -> Result<()> {
        if self.t_domain().contains(t) {
            Ok(())
        } else {
            Err(Error::Domain { what: "t", value: t })
        }
    }

    /// `h(t)` without a domain check; may return a non-finite value at the
    /// edge of the domain.
    pub(crate) fn h_raw(&self, t: f64) -> f64 {
        match &self.density {
            Density::Euclidean => 1.0,
            Density::HyperbolicDisk => 2.0 / (1.0 - t),
            Density::PuncturedDisk => -2.0 / (t.sqrt() * t.ln()),
            Density::HyperbolicAnnulus { log_r } => {
                let phi = PI * t.ln() / (4.0 * log_r);
                PI / (2.0 * t.sqrt() * log_r * phi.cos())
            }
            Density::Sphere => 2.0 / (1.0 + t),
            Density::Cigar => 1.0 / (1.0 + t).sqrt(),
            Density::Custom { h, .. } => h(t),
        }
    }

    pub(crate) fn h_prime_raw(&self, t: f64) -> f64 {
        match &self.density {
            Density::Euclidean => 0.0,
            Density::HyperbolicDisk => 2.0 / ((1.0 - t) * (1.0 - t)),
            Density::PuncturedDisk => {
                let l = t.ln();
                (l + 2.0) / (t.powf(1.5) * l * l)
            }
            Density::HyperbolicAnnulus { log_r } => {
                let a = PI / (4.0 * log_r);
                let phi = a * t.ln();
                let sec = 1.0 / phi.cos();
                PI / (2.0 * log_r) * sec * (a * phi.tan() - 0.5) / t.powf(1.5)
            }
            Density::Sphere => -2.0 / ((1.0 + t) * (1.0 + t)),
            Density::Cigar => -0.5 / (1.0 + t).powf(1.5),
            Density::Custom { h_prime, .. } => h_prime(t),
        }
    }

    fn h_second_raw(&self, t: f64) -> f64 {
        match &self.density {
            Density::Euclidean => 0.0,
            Density::HyperbolicDisk => 4.0 / (1.0 - t).powi(3),
            Density::PuncturedDisk => {
                let l = t.ln();
                -(1.5 / l + 4.0 / (l * l) + 4.0 / (l * l * l)) / t.powf(2.5)
            }
            Density::HyperbolicAnnulus { log_r } => {
                let a = PI / (4.0 * log_r);
                let phi = a * t.ln();
                let sec = 1.0 / phi.cos();
                let tan = phi.tan();
                let bracket = -1.5 * (a * tan - 0.5) + a * tan * (a * tan - 0.5) + a * a * sec * sec;
                PI / (2.0 * log_r) * sec * bracket / t.powf(2.5)
            }
            Density::Sphere => 4.0 / (1.0 + t).powi(3),
            Density::Cigar => 0.75 / (1.0 + t).powf(2.5),
            Density::Custom { h_prime, domain, .. } => {
                let step = 1e-5 * t.sqrt().max(1e-3);
                if domain.contains(t - step) && domain.contains(t + step) {
                    (h_prime(t + step) - h_prime(t - step)) / (2.0 * step)
                } else if domain.contains(t + 2.0 * step) {
                    (-3.0 * h_prime(t) + 4.0 * h_prime(t + step) - h_prime(t + 2.0 * step)) / (2.0 * step)
                } else {
                    (3.0 * h_prime(t) - 4.0 * h_prime(t - step) + h_prime(t - 2.0 * step)) / (2.0 * step)
                }
            }
        }
    }

    /// `h(t)`.
    pub fn density(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.h_raw(t))
    }

    /// `h'(t)`.
    pub fn density_prime(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.h_prime_raw(t))
    }

    /// `h''(t)`, analytic for the built-in kinds.
    pub fn density_second(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.h_second_raw(t))
    }

    /// `h'(t) / h(t)`.
    pub fn log_derivative(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.h_prime_raw(t) / self.h_raw(t))
    }

    /// `4 t h'(t) / h(t)`, whose monotonicity fixes the sign of the curvature.
    pub fn coupling(&self, t: f64) -> Result<f64> {
        Ok(4.0 * t * self.log_derivative(t)?)
    }

    /// Gauss curvature `K = -(1/h^2) (4 t h'/h)'`.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        let h = self.h_raw(t);
        let hp = self.h_prime_raw(t);
        let hpp = self.h_second_raw(t);
        let d_coupling = 4.0 * (hp / h + t * (hpp * h - hp * hp) / (h * h));
        Ok(-d_coupling / (h * h))
    }

    /// Classifies the curvature sign on `[lo, hi]` by sampling `4 t h'/h`
    /// at `samples` interior points.
    pub fn classify_curvature(&self, lo: f64, hi: f64, samples: usize) -> Result<CurvatureSign> {
        if samples < 3 {
            return Err(Error::InvalidParameter("classification needs at least 3 samples"));
        }
        if !(lo < hi) {
            return Err(Error::InvalidParameter("empty t-range"));
        }
        let domain = self.t_domain();
        if !domain.contains_closure(lo) || !domain.contains_closure(hi) {
            return Err(Error::Domain { what: "t", value: if domain.contains_closure(lo) { hi } else { lo } });
        }
        let mut prev = None;
        let mut scale: f64 = 0.0;
        let (mut rising, mut falling) = (0.0f64, 0.0f64);
        for i in 0..samples {
            let t = lo + (hi - lo) * (i as f64 + 1.0) / (samples as f64 + 1.0);
            let q = self.coupling(t)?;
            scale = scale.max(q.abs());
            if let Some(p) = prev {
                let d: f64 = q - p;
                rising = rising.max(d);
                falling = falling.max(-d);
            }
            prev = Some(q);
        }
        let tol = 1e-12 * scale.max(1.0);
        Ok(match (rising > tol, falling > tol) {
            (false, false) => CurvatureSign::Zero,
            (true, false) => CurvatureSign::Negative,
            (false, true) => CurvatureSign::Positive,
            (true, true) => CurvatureSign::Indefinite,
        })
    }

    /// Length of the radial segment between chart radii `a <= b`,
    /// `∫_a^b h(s^2) ds`, by adaptive quadrature.
    pub fn radial_distance(&self, a: f64, b: f64) -> Result<f64> {
        self.radial_distance_with(a, b, &QuadConfig::default())
    }

    pub fn radial_distance_with(&self, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64> {
        if !(0.0 <= a && a <= b) {
            return Err(Error::InvalidParameter("radial distance needs 0 <= a <= b"));
        }
        let domain = self.t_domain();
        if !domain.contains_closure(a * a) {
            return Err(Error::Domain { what: "a", value: a });
        }
        if !domain.contains_closure(b * b) {
            return Err(Error::Domain { what: "b", value: b });
        }
        Ok(integrate(|s| self.h_raw(s * s), a, b, cfg)?.value)
    }
}
