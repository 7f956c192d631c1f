//! Numerical core for radial harmonic diffeomorphisms between annuli.
//!
//! The crate is `no_std` (it needs `alloc`) and contains no IO. It covers:
//!
//! * [`radial_metric`]: conformal densities `h(|z|^2)|dz|`, their curvature,
//!   radial distances, geodesic polar profiles and the geodesic ODE.
//! * [`radial_harmonic`]: the radial harmonic families on the sphere and the
//!   hyperbolic disk built from the first integral `y'^2 = y^2 + c(1 ± y^2)^2`,
//!   together with the Euclidean Nitsche maps.
//! * [`bounds`]: closed-form necessary conditions relating the modulus of the
//!   domain annulus to the geometry of the target annulus.
//! * [`verify`]: grid and analytic checks of the harmonic map equation, the
//!   Hopf differential, energies and isometry invariance.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
mod error;
pub mod numeric;
pub mod radial_harmonic;
pub mod radial_metric;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
