//! Argument parsing and the subcommands of the `annuli` binary.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use annuli_core::bounds::{
    euclid_kalaj, euclid_nitsche, euclid_weitsman, hyperbolic_annulus_bound, hyperbolic_bound, main_theorem_rhs,
    riemann_bound, AnnulusSpec, BoundReport, Comparison,
};
use annuli_core::numeric::quad::QuadConfig;
use annuli_core::radial_harmonic::{
    build_map_with, inner_radius_with, EuclideanNitscheMap, RadialMapParams, Surface,
};
use annuli_core::radial_metric::{profile, RadialMetric};
use annuli_core::verify::{
    analytic_residual, hopf_residual, pde_residual, sample, theta_energy, univalence_scan, ConjSquarePerturbation,
    CylinderGauss, PolarGrid, Power,
};
use annuli_core::Complex64;

use crate::error::{CliError, CliResult};
use crate::figures::{figure1, figure23, figure23_table, figure4, figure4_table, open_grid};
use crate::format::{sig15, Table};

#[derive(Debug, Parser)]
#[command(name = "annuli", version, about = "Radial harmonic maps between annuli: figure data, bounds and checks")]
pub struct Cli {
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub rel_tol: f64,
    /// Grid size (radial and angular nodes) for verification runs.
    #[arg(long, global = true, default_value_t = 64)]
    pub grid: usize,
    /// Number of nodes in radial map tables.
    #[arg(long, global = true, default_value_t = 256)]
    pub table_size: usize,
    /// Write CSV here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density, curvature and geodesic profile of a radial metric.
    Metric(MetricArgs),
    /// Evaluate or tabulate a radial harmonic map.
    Map(MapArgs),
    /// Evaluate a modulus bound.
    Bound(BoundArgs),
    /// Data for one of the modulus figures.
    Figure(FigureArgs),
    /// Residual checks on a test map.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricName {
    Euclidean,
    HyperbolicDisk,
    PuncturedDisk,
    HyperbolicAnnulus,
    Sphere,
    Cigar,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    #[arg(long, value_enum)]
    pub kind: MetricName,
    /// `R` of the hyperbolic annulus `A(1/R, R)`.
    #[arg(long)]
    pub big_r: Option<f64>,
    /// Values of `t = |z|^2` at which to report the density and curvature.
    #[arg(long = "t", num_args = 1..)]
    pub t: Vec<f64>,
    /// Chart radii at which to report the geodesic distance from the base.
    #[arg(long = "r", num_args = 1..)]
    pub r: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceName {
    Sphere,
    Hyperbolic,
}

impl From<SurfaceName> for Surface {
    fn from(s: SurfaceName) -> Self {
        match s {
            SurfaceName::Sphere => Surface::Sphere,
            SurfaceName::Hyperbolic => Surface::Hyperbolic,
        }
    }
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long, value_enum)]
    pub surface: SurfaceName,
    /// First-integral constant; defaults to the extremal value.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub tau: f64,
    /// Radii `|z|` at which to evaluate `|w|`.
    #[arg(long, num_args = 1..)]
    pub eval: Vec<f64>,
    /// Print parameters and the inner radius instead of the table.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundName {
    Riemann,
    Hyperbolic,
    HyperbolicAnnulus,
    Main,
    Nitsche,
    Weitsman,
    Kalaj,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub id: BoundName,
    /// Inner chart radius of the target annulus.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Outer chart radius of the target annulus.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Inner geodesic radius of the target annulus.
    #[arg(long, allow_hyphen_values = true)]
    pub rho0: Option<f64>,
    /// Outer geodesic radius of the target annulus.
    #[arg(long, allow_hyphen_values = true)]
    pub rho1: Option<f64>,
    /// Inner radius of the domain annulus `A(r1, 1)`.
    #[arg(long)]
    pub r1: f64,
    /// Target metric for `--id main`.
    #[arg(long, value_enum, default_value = "sphere")]
    pub metric: MetricName,
    #[arg(long)]
    pub big_r: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub which: FigureName,
    /// Number of grid points; 50 for figures 1 to 3 and 101 for figure 4.
    #[arg(long)]
    pub points: Option<usize>,
    /// Outer radius for figure 2 (default `√3/3`).
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseName {
    CylinderGauss,
    SphereExtremal,
    HyperbolicExtremal,
    HopfControl,
    Nitsche,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub case: CaseName,
    #[arg(long, default_value_t = 0.3)]
    pub tau: f64,
    #[arg(long, default_value_t = 0.8)]
    pub sigma: f64,
    /// Domain inner radius for the Nitsche case.
    #[arg(long, default_value_t = 0.5)]
    pub r1: f64,
}

/// Validated global settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub quad: QuadConfig,
    pub grid: usize,
    pub table_size: usize,
}

impl RunConfig {
    pub fn new(rel_tol: f64, grid: usize, table_size: usize) -> CliResult<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(CliError::Usage(format!("--rel-tol must be in (0, 1), got {rel_tol}")));
        }
        if grid < 8 {
            return Err(CliError::Usage(format!("--grid must be at least 8, got {grid}")));
        }
        if table_size < 16 {
            return Err(CliError::Usage(format!("--table-size must be at least 16, got {table_size}")));
        }
        Ok(Self { quad: QuadConfig { rel_tol, abs_tol: 1e-15, max_intervals: 4000 }, grid, table_size })
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing CSV to `stdout` unless `--out` is given.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write) -> CliResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(stdout, "{}", e.render())?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string())),
    };
    let cfg = RunConfig::new(cli.rel_tol, cli.grid, cli.table_size)?;
    let result = run(&cli.command, &cfg);
    // A failed check still writes its table so the offending rows can be inspected.
    let (table, failure) = match result {
        Ok(t) => (t, None),
        Err(Failed(t, e)) => (t, Some(e)),
    };
    if let Some(t) = table {
        match &cli.out {
            Some(path) => {
                let mut f = BufWriter::new(File::create(path)?);
                t.write(&mut f)?;
                f.flush()?;
            }
            None => t.write(&mut *stdout)?,
        }
    }
    failure.map_or(Ok(()), Err)
}

struct Failed(Option<Table>, CliError);

impl<E: Into<CliError>> From<E> for Failed {
    fn from(e: E) -> Self {
        Failed(None, e.into())
    }
}

fn run(cmd: &Command, cfg: &RunConfig) -> Result<Option<Table>, Failed> {
    Ok(Some(match cmd {
        Command::Metric(a) => metric_cmd(a)?,
        Command::Map(a) => map_cmd(a, cfg)?,
        Command::Bound(a) => bound_cmd(a)?,
        Command::Figure(a) => figure_cmd(a, cfg)?,
        Command::Verify(a) => return verify_cmd(a, cfg),
    }))
}

fn build_metric(kind: MetricName, big_r: Option<f64>) -> CliResult<RadialMetric> {
    Ok(match kind {
        MetricName::Euclidean => RadialMetric::euclidean(),
        MetricName::HyperbolicDisk => RadialMetric::hyperbolic_disk(),
        MetricName::PuncturedDisk => RadialMetric::punctured_disk(),
        MetricName::HyperbolicAnnulus => {
            let r = big_r.ok_or_else(|| CliError::Usage("--big-r is required for hyperbolic-annulus".into()))?;
            RadialMetric::hyperbolic_annulus(r)?
        }
        MetricName::Sphere => RadialMetric::sphere(),
        MetricName::Cigar => RadialMetric::cigar(),
    })
}

fn metric_cmd(a: &MetricArgs) -> CliResult<Table> {
    let metric = build_metric(a.kind, a.big_r)?;
    if a.t.is_empty() == a.r.is_empty() {
        return Err(CliError::Usage("give exactly one of --t or --r".into()));
    }
    if !a.r.is_empty() {
        let prof = profile(&metric)?;
        let mut t = Table::new(["r", "omega"]);
        for &r in &a.r {
            t.push_numbers(&[r, prof.omega(r)?]);
        }
        return Ok(t);
    }
    let mut t = Table::new(["t", "h", "h_prime", "curvature"]);
    for &x in &a.t {
        t.push_numbers(&[x, metric.density(x)?, metric.density_prime(x)?, metric.curvature(x)?]);
    }
    Ok(t)
}

fn map_cmd(a: &MapArgs, cfg: &RunConfig) -> CliResult<Table> {
    let surface = Surface::from(a.surface);
    let params = match a.c {
        Some(c) => RadialMapParams::new(surface, c, a.sigma, a.tau)?,
        None => RadialMapParams::extremal(surface, a.tau, a.sigma)?,
    };
    if a.summary {
        let r_in = inner_radius_with(&params, &cfg.quad)?;
        let mut t = Table::new(["quantity", "value"]);
        t.push(vec!["surface".into(), surface.name().into()]);
        for (k, v) in [
            ("c", params.c()),
            ("c_extremal", params.c_extremal()),
            ("tau", params.tau()),
            ("sigma", params.sigma()),
            ("inner_radius", r_in),
            ("modulus", -r_in.ln() / (2.0 * PI)),
        ] {
            t.push(vec![k.into(), sig15(v)]);
        }
        return Ok(t);
    }
    let map = build_map_with(&params, cfg.table_size, &cfg.quad)?;
    if a.eval.is_empty() {
        let mut t = Table::new(["r", "y", "dy_dlogr"]);
        let table = map.table();
        for (x, j) in table.nodes().iter().zip(table.data()) {
            t.push_numbers(&[x.exp(), j.value, j.d1]);
        }
        return Ok(t);
    }
    let mut t = Table::new(["r", "y"]);
    for &r in &a.eval {
        t.push_numbers(&[r, map.g(r)?]);
    }
    Ok(t)
}

const BOUND_HEADER: [&str; 9] =
    ["id", "lhs", "rhs", "comparison", "margin", "satisfied", "applicable", "reason", "formula"];

fn bound_row(t: &mut Table, r: &BoundReport) {
    t.push(report_fields(r.id.name(), r.lhs, r.rhs, r.comparison, r.margin(), r.satisfied, r.applicable, r.reason, r.formula));
}

#[allow(clippy::too_many_arguments)]
fn report_fields(
    id: &str,
    lhs: f64,
    rhs: f64,
    cmp: Comparison,
    margin: f64,
    satisfied: bool,
    applicable: bool,
    reason: Option<&str>,
    formula: &str,
) -> Vec<String> {
    let cmp = match cmp {
        Comparison::GreaterEq => ">=",
        Comparison::LessEq => "<=",
    };
    vec![
        id.into(),
        sig15(lhs),
        sig15(rhs),
        cmp.into(),
        sig15(margin),
        satisfied.to_string(),
        applicable.to_string(),
        reason.unwrap_or("").into(),
        formula.into(),
    ]
}

fn target_spec(a: &BoundArgs) -> CliResult<AnnulusSpec> {
    match (a.tau, a.sigma, a.rho0, a.rho1) {
        (Some(inner), Some(outer), None, None) => Ok(AnnulusSpec::Chart { inner, outer }),
        (None, None, Some(rho0), Some(rho1)) => Ok(AnnulusSpec::Geodesic { rho0, rho1 }),
        _ => Err(CliError::Usage("give either --tau and --sigma or --rho0 and --rho1".into())),
    }
}

fn bound_cmd(a: &BoundArgs) -> CliResult<Table> {
    let mut t = Table::new(BOUND_HEADER);
    match a.id {
        BoundName::Riemann | BoundName::Hyperbolic => {
            let spec = target_spec(a)?;
            let pair =
                if a.id == BoundName::Riemann { riemann_bound(spec, a.r1)? } else { hyperbolic_bound(spec, a.r1)? };
            bound_row(&mut t, &pair.geodesic);
            bound_row(&mut t, &pair.chart);
        }
        BoundName::HyperbolicAnnulus => {
            let (Some(big_r), Some(rho0), Some(rho1)) = (a.big_r, a.rho0, a.rho1) else {
                return Err(CliError::Usage("hyperbolic-annulus needs --big-r, --rho0 and --rho1".into()));
            };
            let pair = hyperbolic_annulus_bound(big_r, rho0, rho1, a.r1)?;
            bound_row(&mut t, &pair.geodesic);
            bound_row(&mut t, &pair.chart);
        }
        BoundName::Main => {
            let metric = build_metric(a.metric, a.big_r)?;
            bound_row(&mut t, &main_theorem_rhs(&metric, target_spec(a)?, a.r1)?);
        }
        BoundName::Nitsche | BoundName::Weitsman | BoundName::Kalaj => {
            let rho = a.tau.ok_or_else(|| CliError::Usage("--tau (target inner radius) is required".into()))?;
            let (name, rhs, formula) = match a.id {
                BoundName::Nitsche => ("euclid-nitsche", euclid_nitsche(a.r1)?, "tau <= 2 r1/(1 + r1^2)"),
                BoundName::Weitsman => ("euclid-weitsman", euclid_weitsman(a.r1)?, "tau <= 1/(1 + (r1 log r1)^2/2)"),
                _ => ("euclid-kalaj", euclid_kalaj(a.r1)?, "tau <= 1/(1 + log^2 r1/2)"),
            };
            let ok = rho <= rhs + annuli_core::bounds::TIE_TOLERANCE;
            t.push(report_fields(name, rho, rhs, Comparison::LessEq, rhs - rho, ok, true, None, formula));
        }
    }
    Ok(t)
}

fn figure_cmd(a: &FigureArgs, cfg: &RunConfig) -> CliResult<Table> {
    let n = a.points.unwrap_or(if a.which == FigureName::Four { 101 } else { 50 });
    if n == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    match a.which {
        FigureName::One => Ok(figure1(&open_grid(0.0, 1.0, n), &cfg.quad)?.table()),
        FigureName::Two | FigureName::Three => {
            let sigmas = match (a.which, a.sigma) {
                (FigureName::Two, s) => vec![s.unwrap_or(1.0 / 3f64.sqrt())],
                (_, Some(s)) => vec![s],
                _ => vec![0.1, 0.9],
            };
            let mut out = Table::new(["sigma", "tau", "h", "h0"]);
            let mut failure = None;
            for sigma in sigmas {
                let taus = open_grid(0.0, sigma, n);
                match figure23(sigma, &taus, &cfg.quad) {
                    Ok(rows) => {
                        for row in figure23_table(&rows).rows {
                            out.push(std::iter::once(sig15(sigma)).chain(row).collect());
                        }
                    }
                    Err(e @ CliError::Check(_)) => failure = Some(e),
                    Err(e) => return Err(e),
                }
            }
            failure.map_or(Ok(out), Err)
        }
        FigureName::Four => Ok(figure4_table(&figure4(&open_grid(0.0, 0.5, n))?)),
    }
}

struct Checks {
    table: Table,
    failed: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self { table: Table::new(["check", "value", "threshold", "pass"]), failed: Vec::new() }
    }

    fn info(&mut self, name: &str, value: f64) {
        self.table.push(vec![name.into(), sig15(value), String::new(), String::new()]);
    }

    fn check(&mut self, name: &str, value: f64, threshold: &str, pass: bool) {
        self.table.push(vec![name.into(), sig15(value), threshold.into(), pass.to_string()]);
        if !pass {
            self.failed.push(name.into());
        }
    }

    fn finish(self) -> Result<Option<Table>, Failed> {
        if self.failed.is_empty() {
            Ok(Some(self.table))
        } else {
            let msg = self.failed.join(", ");
            Err(Failed(Some(self.table), CliError::Check(msg)))
        }
    }
}

fn verify_cmd(a: &VerifyArgs, cfg: &RunConfig) -> Result<Option<Table>, Failed> {
    let n = cfg.grid;
    let mut c = Checks::new();
    match a.case {
        CaseName::CylinderGauss => {
            let sphere = RadialMetric::sphere();
            let grid = PolarGrid::new(0.5, 1.0, n, n)?;
            let rep = analytic_residual(&sphere, &CylinderGauss, &grid)?;
            c.info("term_scale", rep.scale);
            c.check("max_residual", rep.max_abs, "< 1e-12", rep.max_abs < 1e-12);
            let coarse = pde_residual(&sample(&sphere, &CylinderGauss, grid)?).max_abs;
            let fine = pde_residual(&sample(&sphere, &CylinderGauss, grid.refined())?).max_abs;
            c.info("stencil_residual", coarse);
            c.info("stencil_residual_refined", fine);
        }
        CaseName::SphereExtremal | CaseName::HyperbolicExtremal => {
            let surface = if a.case == CaseName::SphereExtremal { Surface::Sphere } else { Surface::Hyperbolic };
            let params = RadialMapParams::extremal(surface, a.tau, a.sigma)?;
            let map = build_map_with(&params, cfg.table_size, &cfg.quad)?;
            let metric = surface.metric();
            let r_in = map.inner_radius();
            c.info("inner_radius", r_in);
            let mut ode = 0.0f64;
            for r in map.interior_radii(100) {
                ode = ode.max(map.ode_residual(r)?);
            }
            c.check("ode_residual", ode, "< 1e-6", ode < 1e-6);
            let grid = PolarGrid::new(r_in, 1.0, n, n)?;
            let g1 = sample(&metric, &map, grid)?;
            let g2 = sample(&metric, &map, grid.refined())?;
            let (e1, e2) = (pde_residual(&g1).max_metric_norm, pde_residual(&g2).max_metric_norm);
            c.info("pde_residual", e1);
            c.info("pde_residual_refined", e2);
            c.check("pde_residual_decreases", e1 / e2, "> 1", e2 < e1);
            let (h1, h2) = (hopf_residual(&g1), hopf_residual(&g2));
            c.info("hopf_residual", h1);
            c.check("hopf_residual_refined", h2, "< coarse", h2 < h1);
            let want = 2.0 * PI * (1.0 / r_in).ln();
            let rel = (theta_energy(&g1)? - want).abs() / want;
            c.check("theta_energy_rel_error", rel, "< 1e-6", rel < 1e-6);
        }
        CaseName::HopfControl => {
            let sphere = RadialMetric::sphere();
            let grid = PolarGrid::new(0.5, 1.0, n, n)?;
            let bad = ConjSquarePerturbation { inner: Power(1), eps: 0.01 };
            let h1 = hopf_residual(&sample(&sphere, &bad, grid)?);
            let h2 = hopf_residual(&sample(&sphere, &bad, grid.refined())?);
            c.check("hopf_residual", h1, ">= 1e-3", h1 >= 1e-3);
            c.check("hopf_residual_refined", h2, ">= 1e-3", h2 >= 1e-3);
        }
        CaseName::Nitsche => {
            let rho = annuli_core::radial_harmonic::nitsche_critical_radius(a.r1);
            let f = EuclideanNitscheMap::new(a.r1, rho)?;
            let mut images = Vec::with_capacity(n * n);
            for i in 0..n {
                let r = a.r1 + (1.0 - a.r1) * i as f64 / (n - 1) as f64;
                for j in 0..n {
                    images.push(f.evaluate(Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64))?);
                }
            }
            let rep = univalence_scan(&images, 1e-12);
            c.info("rho", rho);
            c.check("min_separation", rep.min_separation, "> 1e-12", rep.distinct);
        }
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let mut buf = Vec::new();
        run_from(std::iter::once("annuli").chain(args.iter().copied()), &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::new(1e-10, 8, 16).is_ok());
        assert!(RunConfig::new(0.0, 8, 16).is_err());
        assert!(RunConfig::new(1e-10, 7, 16).is_err());
        assert!(RunConfig::new(1e-10, 8, 15).is_err());
    }

    #[test]
    fn identity_map_evaluation() {
        let out = run_ok(&["map", "--surface", "hyperbolic", "--c", "0", "--sigma", "1", "--tau", "0.3", "--eval", "0.5"]);
        assert_eq!(out, "r,y\n0.500000000000000,0.500000000000000\n");
    }

    #[test]
    fn usage_error_kind() {
        let mut buf = Vec::new();
        let err = run_from(["annuli", "bound", "--id", "riemann"], &mut buf).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
