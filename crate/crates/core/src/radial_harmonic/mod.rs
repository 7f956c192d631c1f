//! Radial harmonic maps between annuli on the sphere and the hyperbolic
//! disk, and the Euclidean Nitsche maps.
//!
//! On the sphere the first integral is `y'^2 = y^2 + c(1 + y^2)^2`; this is
//! the sign for which substituting back into the radial equation gives an
//! identity.

mod map;
mod nitsche;
mod params;

pub use map::{build_map, build_map_with, RadialHarmonicMap};
pub use nitsche::{nitsche_critical_radius, EuclideanNitscheMap};
pub use params::{
    extremal_c, extremal_inner_radius, inner_radius, inner_radius_with, radicand, radicand_prime,
    RadialMapParams, Surface,
};
