//! Tabulated data behind the modulus figures.

use std::f64::consts::PI;

use annuli_core::bounds::{f1, f2, riemann_r_lower, TIE_TOLERANCE};
use annuli_core::numeric::quad::QuadConfig;
use annuli_core::radial_harmonic::{inner_radius_with, RadialMapParams, Surface};

use crate::error::{CliError, CliResult};
use crate::format::{sig15, Table};

/// `n` equally spaced points strictly inside `(lo, hi)`.
pub fn open_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64).collect()
}

/// `(1/2π) log(1/r)`.
pub fn modulus(r: f64) -> f64 {
    -r.ln() / (2.0 * PI)
}

/// Aitken's `Δ²` estimate from three terms of a sequence.
pub fn aitken(x0: f64, x1: f64, x2: f64) -> f64 {
    let (d1, d2) = (x1 - x0, x2 - x1);
    let den = d2 - d1;
    if den == 0.0 || !den.is_finite() {
        return x2;
    }
    x2 - d2 * d2 / den
}

fn sphere_extremal(tau: f64, sigma: f64, cfg: &QuadConfig) -> CliResult<f64> {
    Ok(inner_radius_with(&RadialMapParams::extremal(Surface::Sphere, tau, sigma)?, cfg)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusRow {
    pub tau: f64,
    pub radius: f64,
    pub modulus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure1 {
    pub rows: Vec<ModulusRow>,
    /// Rows at `τ = 1 - 10^{-k}`, `k = 2, 3, 4`.
    pub endpoint: [ModulusRow; 3],
    /// Extrapolated modulus as `τ → 1`.
    pub limit: f64,
}

/// `h_{τ,1}(τ)` and its modulus on `taus`, plus an extrapolated `τ → 1` limit.
pub fn figure1(taus: &[f64], cfg: &QuadConfig) -> CliResult<Figure1> {
    let row = |tau: f64| -> CliResult<ModulusRow> {
        let radius = sphere_extremal(tau, 1.0, cfg)?;
        Ok(ModulusRow { tau, radius, modulus: modulus(radius) })
    };
    let rows = taus.iter().map(|&t| row(t)).collect::<CliResult<Vec<_>>>()?;
    let endpoint = [row(1.0 - 1e-2)?, row(1.0 - 1e-3)?, row(1.0 - 1e-4)?];
    let limit = aitken(endpoint[0].modulus, endpoint[1].modulus, endpoint[2].modulus);
    Ok(Figure1 { rows, endpoint, limit })
}

impl Figure1 {
    pub fn table(&self) -> Table {
        let mut t = Table::new(["tau", "h", "modulus"]);
        for r in self.rows.iter().chain(&self.endpoint) {
            t.push_numbers(&[r.tau, r.radius, r.modulus]);
        }
        t.push(vec!["limit".into(), String::new(), sig15(self.limit)]);
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundRow {
    pub tau: f64,
    pub radius: f64,
    pub lower: f64,
}

impl LowerBoundRow {
    pub fn margin(&self) -> f64 {
        self.radius - self.lower
    }
}

/// `h_{τ,σ}(τ)` against `h₀(σ, τ)`; fails if any row has `h_{τ,σ}(τ) < h₀(σ, τ)`.
pub fn figure23(sigma: f64, taus: &[f64], cfg: &QuadConfig) -> CliResult<Vec<LowerBoundRow>> {
    let rows = taus
        .iter()
        .map(|&tau| {
            Ok(LowerBoundRow { tau, radius: sphere_extremal(tau, sigma, cfg)?, lower: riemann_r_lower(sigma, tau)? })
        })
        .collect::<CliResult<Vec<_>>>()?;
    check_order(rows.iter().map(|r| (r.tau, r.margin())), "h below h0")?;
    Ok(rows)
}

pub fn figure23_table(rows: &[LowerBoundRow]) -> Table {
    let mut t = Table::new(["tau", "h", "h0"]);
    for r in rows {
        t.push_numbers(&[r.tau, r.radius, r.lower]);
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareRow {
    pub s: f64,
    pub f1: f64,
    pub f2: f64,
}

/// `f₁(s)` against `f₂(s)`; fails if any row has `f₁ < f₂`.
pub fn figure4(ss: &[f64]) -> CliResult<Vec<CompareRow>> {
    let rows =
        ss.iter().map(|&s| Ok(CompareRow { s, f1: f1(s)?, f2: f2(s)? })).collect::<CliResult<Vec<_>>>()?;
    check_order(rows.iter().map(|r| (r.s, r.f1 - r.f2)), "f1 below f2")?;
    Ok(rows)
}

pub fn figure4_table(rows: &[CompareRow]) -> Table {
    let mut t = Table::new(["s", "f1", "f2"]);
    for r in rows {
        t.push_numbers(&[r.s, r.f1, r.f2]);
    }
    t
}

fn check_order(margins: impl Iterator<Item = (f64, f64)>, what: &str) -> CliResult<()> {
    for (x, m) in margins {
        if !(m >= -TIE_TOLERANCE) {
            return Err(CliError::Check(format!("{what} at {x} (margin {m:e})")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = open_grid(0.0, 0.5, 101);
        assert_eq!(g.len(), 101);
        assert!(g[0] > 0.0 && g[100] < 0.5);
        assert!((g[50] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn aitken_is_exact_on_geometric_sequences() {
        let x = |k: i32| 0.25 + 0.3 * 0.1f64.powi(k);
        assert!((aitken(x(1), x(2), x(3)) - 0.25).abs() < 1e-15);
        assert_eq!(aitken(1.0, 1.0, 1.0), 1.0);
    }

    #[test]
    fn figure_rows_are_ordered() {
        let cfg = QuadConfig { rel_tol: 1e-12, abs_tol: 1e-15, max_intervals: 4000 };
        let rows = figure23(0.5, &open_grid(0.0, 0.5, 5), &cfg).unwrap();
        assert!(rows.iter().all(|r| r.radius >= r.lower && r.radius < 1.0));
        let rows = figure4(&[0.01, 0.25, 0.49]).unwrap();
        assert!(rows[0].f1 > 0.9 && rows[0].f2 > 0.9);
        assert!(rows[2].f1 < 0.2);
    }

    #[test]
    fn ordering_violation_is_a_check_failure() {
        let err = check_order([(0.1, 1.0), (0.2, -1e-9)].into_iter(), "x").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(check_order([(0.1, -1e-13)].into_iter(), "x").is_ok());
    }
}
