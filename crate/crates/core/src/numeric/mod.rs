//! Quadrature, bracketing root finding and Hermite interpolation.

pub mod hermite;
pub mod quad;
pub mod roots;
