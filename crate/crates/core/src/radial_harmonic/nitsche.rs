#[allow(unused_imports)]
use num_traits::Float;

use crate::{Complex64, Error, Result};

/// The Euclidean harmonic map `f(z) = A z + B / z̄` of `A(r₁, 1)` onto
/// `A(ϱ, 1)` with `|f| = 1` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanNitscheMap {
    r1: f64,
    rho: f64,
    a: f64,
    b: f64,
}

/// Largest image radius `2 r₁ / (1 + r₁²)` reached by the maps above.
pub fn nitsche_critical_radius(r1: f64) -> f64 {
    2.0 * r1 / (1.0 + r1 * r1)
}

impl EuclideanNitscheMap {
    /// `rho = 0` gives `(z - r₁² / z̄) / (1 - r₁²)`, which collapses the inner circle.
    pub fn new(r1: f64, rho: f64) -> Result<Self> {
        if !(r1 > 0.0 && r1 < 1.0) {
            return Err(Error::Domain { what: "r1", value: r1 });
        }
        let crit = nitsche_critical_radius(r1);
        if !(rho >= 0.0) || rho > crit * (1.0 + 4.0 * f64::EPSILON) {
            return Err(Error::Domain { what: "rho", value: rho });
        }
        let d = r1 * r1 - 1.0;
        Ok(Self { r1, rho, a: (r1 * rho - 1.0) / d, b: (r1 * r1 - r1 * rho) / d })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Coefficients `(A, B)`.
    pub fn coefficients(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        let slack = 1e-12;
        if !(r >= self.r1 * (1.0 - slack) && r <= 1.0 + slack) {
            return Err(Error::Domain { what: "|z|", value: r });
        }
        Ok(z * self.a + z.conj().inv() * self.b)
    }
}
