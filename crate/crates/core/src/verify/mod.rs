//! Numerical checks of harmonicity, Hopf differentials, energies and
//! isometry invariance for sampled or analytically given maps.
//!
//! Grid derivatives use `s = log r`:
//! `w_z = e^{-iθ}(w_s - i w_θ)/(2r)`, `w_z̄ = e^{iθ}(w_s + i w_θ)/(2r)`,
//! `w_zz̄ = (w_ss + w_θθ)/(4r^2)` and `w_z w_z̄ = (w_s^2 + w_θ^2)/(4r^2)`.

mod analytic;
mod grid;
mod univalence;

pub use analytic::{
    analytic_hopf_residual, analytic_residual, hopf_differential, jet_residual, radial_jet, sample, AnalyticMap,
    ConjSquarePerturbation, CylinderGauss, Dilation, Isometric, Jet, Power,
};
pub use grid::{
    energy, hopf_residual, isometry_conjugate, pde_residual, polar_growth, polar_laplacian_check_grid, theta_energy,
    GridMap, PolarGrid, PolarLaplacianReport, ResidualReport,
};
pub use univalence::{univalence_scan, UnivalenceReport};

use crate::radial_harmonic::RadialHarmonicMap;
use crate::Result;

/// Samples `map` on `grid` and checks the geodesic polar identity for `Δρ`.
pub fn polar_laplacian_check(map: &RadialHarmonicMap, grid: &PolarGrid) -> Result<PolarLaplacianReport> {
    let gm = sample(&map.params().surface().metric(), map, *grid)?;
    polar_laplacian_check_grid(&gm)
}

#[cfg(test)]
mod tests;
