//! Named checks of the closed forms against the oracles, collected into a report.

use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

use super::dual_oracle::DualWindowOracle;
use super::pw::PwTestSignal;
use super::quadrature::{discrete_frame_operator, reconstruct, reconstruct_dual};
use super::spectral::{empirical_frame_bounds_with, EmpiricalBoundsConfig};
use crate::closed_form::{frame_bound_estimates, DualWindow, FrameOperator};
use crate::error::{GaborError, Result};
use crate::lattice::{cauchy, GaborLattice};
use crate::signal::{GridSpec, SampledSignal};

pub const CHECK_NAMES: [&str; 6] = [
    "dual_vs_oracle",
    "S_route_equivalence",
    "S_gamma_equals_g",
    "reconstruction",
    "bound_sandwich",
    "gamma_hat_support",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub params: BTreeMap<String, ParamValue>,
}

impl Check {
    /// A NaN error never passes.
    pub fn new(name: &str, error: f64, tolerance: f64) -> Self {
        Check { name: name.to_owned(), error, tolerance, passed: error <= tolerance, params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    fn with_lattice(self, lat: &GaborLattice) -> Self {
        self.with("alpha", lat.alpha()).with("beta", lat.beta()).with("w", lat.w())
    }

    /// One line for logs: `PASS name error <= tolerance`.
    pub fn summary(&self) -> String {
        let (tag, op) = if self.passed { ("PASS", "<=") } else { ("FAIL", ">") };
        format!("{tag} {} {:.3e} {op} {:.1e}", self.name, self.error, self.tolerance)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub dual_vs_oracle: f64,
    pub s_route_equivalence: f64,
    pub s_gamma_equals_g: f64,
    pub reconstruction: f64,
    pub bound_sandwich: f64,
    pub gamma_hat_support: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            dual_vs_oracle: 1e-8,
            s_route_equivalence: 1e-4,
            s_gamma_equals_g: 1e-6,
            reconstruction: 1e-3,
            bound_sandwich: 0.02,
            gamma_hat_support: 1e-4,
        }
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "dual_vs_oracle" => self.dual_vs_oracle,
            "S_route_equivalence" => self.s_route_equivalence,
            "S_gamma_equals_g" => self.s_gamma_equals_g,
            "reconstruction" => self.reconstruction,
            "bound_sandwich" => self.bound_sandwich,
            "gamma_hat_support" => self.gamma_hat_support,
            _ => return None,
        })
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0) {
            return Err(GaborError::param(format!("tolerance for {name} must be non-negative, got {value}")));
        }
        let slot = match name {
            "dual_vs_oracle" => &mut self.dual_vs_oracle,
            "S_route_equivalence" => &mut self.s_route_equivalence,
            "S_gamma_equals_g" => &mut self.s_gamma_equals_g,
            "reconstruction" => &mut self.reconstruction,
            "bound_sandwich" => &mut self.bound_sandwich,
            "gamma_hat_support" => &mut self.gamma_hat_support,
            _ => return Err(GaborError::param(format!("unknown check {name}"))),
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Truncation radii for the frame-sum checks; `None` picks them from the lattice and the grid.
    pub m_radius: Option<usize>,
    pub n_radius: Option<usize>,
    pub seed: u64,
    /// Number of test signals for the route and reconstruction checks.
    pub signals: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    /// `S gamma = g` is compared on `|t| <= interior`.
    pub interior: f64,
    /// Half-width of the grid carrying `gamma` in the `S gamma = g` check.
    pub half_width: f64,
    pub trials: usize,
    pub tolerances: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            m_radius: None,
            n_radius: None,
            seed: 42,
            signals: 3,
            t_min: -10.0,
            t_max: 10.0,
            samples: 512,
            interior: 8.0,
            half_width: 1e6,
            trials: 8,
            tolerances: Tolerances::default(),
        }
    }
}

/// Ends of a grid count as quiet when the signal there is below this fraction of its peak.
pub const EDGE_TOLERANCE: f64 = 1e-9;

fn quiet_at_edges(s: &PwTestSignal, grid: GridSpec) -> bool {
    let probe = |t0: f64, count: usize| -> f64 {
        let nodes = s.sample(t0, grid.dt, count);
        nodes.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    };
    let span = (1.0 / grid.dt).ceil() as usize;
    let peak = probe(-8.0, (16.0 / grid.dt) as usize);
    let end = grid.time(grid.len - 1);
    probe(grid.t0, span).max(probe(end - grid.dt * span as f64, span + 1)) <= EDGE_TOLERANCE * peak
}

/// Grid for the frame-sum checks of [`verify`] with modulations up to `|n| <= n_radius`.
///
/// The spacing is `1/(beta p)`. The sampled spectrum repeats every `beta p`, so `p` exceeds
/// `n_radius` by enough to push the alias of the outermost modulation `e^{-30}` down the window's
/// spectral tail; it also keeps `dt <= alpha/16` and 8 samples per unit. The period starts at 64
/// and doubles until every signal is quiet at both ends.
pub fn signal_grid(lat: &GaborLattice, signals: &[PwTestSignal], n_radius: usize) -> GridSpec {
    let beta = lat.beta();
    let p = [
        (16.0 / lat.density() * (1.0 - 1e-12)).ceil(),
        n_radius as f64 + (30.0 / (2.0 * std::f64::consts::PI * lat.w() * beta)).ceil(),
        (8.0 / beta).ceil(),
    ]
    .into_iter()
    .fold(1.0, f64::max) as usize;
    let p = aligned_step_count(lat.density(), p);
    let mut period = 64.0;
    loop {
        let grid = GridSpec::commensurate(period, beta, p);
        if period >= 4096.0 || signals.iter().all(|s| quiet_at_edges(s, grid)) {
            return grid;
        }
        period *= 2.0;
    }
}

/// Smallest `q` in `[p, 2p)` with `density q` an integer, else `p`. With `alpha/dt = density p`
/// integral the time shifts of a window are slices of one sampled copy.
fn aligned_step_count(density: f64, p: usize) -> usize {
    (p..2 * p)
        .find(|&q| {
            let x = density * q as f64;
            (x - x.round()).abs() <= 1e-9 * x
        })
        .unwrap_or(p)
}

/// Frequency truncation with the window's spectral tail `e^{-2 pi w beta N}` below `e^{-24}`;
/// never less than 50.
pub fn auto_n_radius(lat: &GaborLattice) -> usize {
    let n = (12.0 / (std::f64::consts::PI * lat.w() * lat.beta())).ceil() as usize + 4;
    n.max(50)
}

/// Time truncation covering `grid` with atoms to spare; never less than 50.
pub fn auto_m_radius(lat: &GaborLattice, grid: GridSpec) -> usize {
    let half = 0.5 * grid.dt * grid.len as f64;
    ((1.25 * half / lat.alpha()).ceil() as usize).max(50)
}

/// Test signal `i` of a family: bands cycle through -1, 0, 1, seeds count up from `seed`.
pub fn test_signals(lat: &GaborLattice, count: usize, seed: u64) -> Vec<PwTestSignal> {
    (0..count)
        .map(|i| PwTestSignal::for_lattice((i % 3) as i64 - 1, seed.wrapping_add(i as u64), lat))
        .collect()
}

fn linspace(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let step = (hi - lo) / (samples - 1) as f64;
    (0..samples).map(|i| lo + step * i as f64).collect()
}

fn difference_norm(a: &SampledSignal, b: &SampledSignal) -> f64 {
    a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// `max |gamma - gamma_oracle| / max |gamma_oracle|` over `samples` points of `[t_min, t_max]`.
pub fn check_dual_vs_oracle(lat: &GaborLattice, t_min: f64, t_max: f64, samples: usize, tolerance: f64) -> Result<Check> {
    if !(t_min < t_max) || samples < 2 {
        return Err(GaborError::param("need t_min < t_max and at least two samples"));
    }
    let ts = linspace(t_min, t_max, samples);
    let dual = DualWindow::new(lat);
    let oracle = DualWindowOracle::new(lat, t_min.abs().max(t_max.abs()), 1.0);
    let (mut diff, mut peak) = (0.0f64, 0.0f64);
    for &t in &ts {
        let reference = oracle.eval(t);
        diff = diff.max((dual.eval(t) - reference).norm());
        peak = peak.max(reference.norm());
    }
    Ok(Check::new("dual_vs_oracle", diff / peak, tolerance)
        .with_lattice(lat)
        .with("branch_n", dual.params().n as usize)
        .with("t_min", t_min)
        .with("t_max", t_max)
        .with("samples", samples))
}

/// Largest `||S f - S_{M,N} f|| / ||f||` over the signals sampled on `grid`.
pub fn check_route_equivalence(
    lat: &GaborLattice,
    signals: &[PwTestSignal],
    grid: GridSpec,
    m_radius: usize,
    n_radius: usize,
    tolerance: f64,
) -> Result<Check> {
    let op = FrameOperator::new(lat);
    let mut worst = 0.0f64;
    for s in signals {
        let f = s.sample(grid.t0, grid.dt, grid.len);
        let closed = op.apply(&f)?;
        let truncated = discrete_frame_operator(&f, lat, m_radius, n_radius)?;
        worst = worst.max(difference_norm(&closed, &truncated) / f.norm());
    }
    Ok(Check::new("S_route_equivalence", worst, tolerance)
        .with_lattice(lat)
        .with("M", m_radius)
        .with("N", n_radius)
        .with("signals", signals.len())
        .with("grid_t0", grid.t0)
        .with("grid_dt", grid.dt)
        .with("grid_len", grid.len))
}

/// Sample spacing `1/(beta p)` with the smallest `p` meeting `dt <= alpha/16`.
fn commensurate_step(lat: &GaborLattice) -> f64 {
    let p = (16.0 / lat.density() * (1.0 - 1e-12)).ceil();
    1.0 / (lat.beta() * p)
}

/// `||S gamma - g|| / ||g||` on `|t| <= interior`, with `S` applied by the multiplier route to
/// `gamma` sampled on `[-half_width, half_width]`.
pub fn check_s_gamma(lat: &GaborLattice, interior: f64, half_width: f64, tolerance: f64) -> Result<Check> {
    if !(interior > 0.0 && half_width > interior) {
        return Err(GaborError::param("need 0 < interior < half_width"));
    }
    let dt = commensurate_step(lat);
    let k = (half_width / dt).round() as usize;
    let grid = GridSpec { t0: -(k as f64) * dt, dt, len: 2 * k + 1 };
    let m = (interior / dt).floor() as usize;
    let indices: Vec<usize> = (k - m..=k + m).collect();
    let dual = DualWindow::new(lat);
    let values = FrameOperator::new(lat).apply_at_fn(grid, |t| dual.eval(t), &indices)?;
    let (mut num, mut den) = (0.0, 0.0);
    for (&i, v) in indices.iter().zip(&values) {
        let g = cauchy(grid.time(i), lat.w());
        num += (v - g).norm_sqr();
        den += g.norm_sqr();
    }
    Ok(Check::new("S_gamma_equals_g", (num / den).sqrt(), tolerance)
        .with_lattice(lat)
        .with("route", "multiplier")
        .with("interior", interior)
        .with("half_width", half_width)
        .with("dt", dt))
}

/// `||S_{M,N} gamma - g|| / ||g||` on `|t| <= interior`, truncated double sum on the standard grid.
pub fn check_s_gamma_truncated(
    lat: &GaborLattice,
    m_radius: usize,
    n_radius: usize,
    interior: f64,
    tolerance: f64,
) -> Result<Check> {
    let dual = DualWindow::new(lat);
    let gamma = SampledSignal::desk(|t| dual.eval(t));
    let g = SampledSignal::desk(|t| cauchy(t, lat.w()));
    let sg = discrete_frame_operator(&gamma, lat, m_radius, n_radius)?;
    Ok(Check::new("S_gamma_equals_g", sg.relative_error_within(&g, interior), tolerance)
        .with_lattice(lat)
        .with("route", "truncated")
        .with("M", m_radius)
        .with("N", n_radius)
        .with("interior", interior))
}

/// Largest relative error of both reconstruction orderings over the signals sampled on `grid`.
pub fn check_reconstruction(
    lat: &GaborLattice,
    signals: &[PwTestSignal],
    grid: GridSpec,
    m_radius: usize,
    n_radius: usize,
    tolerance: f64,
) -> Result<Check> {
    let (mut primal, mut dual) = (0.0f64, 0.0f64);
    for s in signals {
        let f = s.sample(grid.t0, grid.dt, grid.len);
        primal = primal.max(reconstruct(&f, lat, m_radius, n_radius)?.relative_error(&f));
        dual = dual.max(reconstruct_dual(&f, lat, m_radius, n_radius)?.relative_error(&f));
    }
    Ok(Check::new("reconstruction", primal.max(dual), tolerance)
        .with_lattice(lat)
        .with("M", m_radius)
        .with("N", n_radius)
        .with("signals", signals.len())
        .with("error_g_then_gamma", primal)
        .with("error_gamma_then_g", dual)
        .with("grid_t0", grid.t0)
        .with("grid_dt", grid.dt)
        .with("grid_len", grid.len))
}

/// Worst relative excess `max(A_lower/A_emp - 1, B_emp/B_upper - 1, 0)`; passes when
/// `A_lower <= A_emp (1 + tol)` and `B_emp <= B_upper (1 + tol)`.
pub fn check_bound_sandwich(lat: &GaborLattice, cfg: &EmpiricalBoundsConfig, tolerance: f64) -> Result<Check> {
    let (a_lower, b_upper) = frame_bound_estimates(lat);
    let emp = empirical_frame_bounds_with(lat, cfg)?;
    let excess = (a_lower / emp.a_emp - 1.0).max(emp.b_emp / b_upper - 1.0).max(0.0);
    let mut check = Check::new("bound_sandwich", excess, tolerance)
        .with_lattice(lat)
        .with("A_lower", a_lower)
        .with("B_upper", b_upper)
        .with("A_emp", emp.a_emp)
        .with("B_emp", emp.b_emp)
        .with("trials", cfg.trials)
        .with("M", cfg.m_radius)
        .with("N", cfg.n_radius)
        .with("seed", cfg.seed as i64);
    if let Some(d) = emp.diagnostic {
        check = check.with("diagnostic", d.as_str());
    }
    Ok(check)
}

/// Grid for the spectral support check: period `1024 alpha`, `dt = alpha/16`. The sampled `gamma`
/// is cut off where it still decays like `1/t`, so leakage out of `[-1/(2 alpha), 1/(2 alpha)]`
/// falls off only in proportion to the period.
pub const SUPPORT_PERIODS: f64 = 1024.0;
pub const SUPPORT_SAMPLES: usize = 1 << 14;

/// DFT energy of sampled `gamma` at frequencies outside `[-1/alpha, 1/alpha]`, relative to the total.
pub fn check_gamma_hat_support(lat: &GaborLattice, tolerance: f64) -> Check {
    let dual = DualWindow::new(lat);
    let gamma = SampledSignal::centered(SUPPORT_PERIODS * lat.alpha(), SUPPORT_SAMPLES, |t| dual.eval(t));
    let edge = 1.0 / lat.alpha();
    Check::new("gamma_hat_support", gamma.spectral_fraction_outside(-edge, edge), tolerance)
        .with_lattice(lat)
        .with("period", SUPPORT_PERIODS * lat.alpha())
        .with("samples", gamma.len())
}

/// The standard 64-unit grid of `2^14` samples.
pub fn desk_grid() -> GridSpec {
    let len = crate::signal::DESK_SAMPLES;
    let dt = crate::signal::DESK_PERIOD / len as f64;
    GridSpec { t0: -0.5 * crate::signal::DESK_PERIOD, dt, len }
}

/// `|gamma(t) pi (t + iw)|` at `t = -iw`.
pub fn vanishing_point(lat: &GaborLattice) -> f64 {
    DualWindow::new(lat).numerator(Complex64::new(0.0, -lat.w())).norm()
}

/// All six checks for one lattice.
pub fn verify(lat: &GaborLattice, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let tol = &cfg.tolerances;
    let signals = test_signals(lat, cfg.signals, cfg.seed);
    let n = cfg.n_radius.unwrap_or_else(|| auto_n_radius(lat));
    let grid = signal_grid(lat, &signals, n);
    let m = cfg.m_radius.unwrap_or_else(|| auto_m_radius(lat, grid));
    let bounds = EmpiricalBoundsConfig::for_lattice(lat, cfg.trials).with_seed(cfg.seed);
    let checks = vec![
        check_dual_vs_oracle(lat, cfg.t_min, cfg.t_max, cfg.samples, tol.dual_vs_oracle)?,
        check_route_equivalence(lat, &signals, grid, m, n, tol.s_route_equivalence)?,
        check_s_gamma(lat, cfg.interior, cfg.half_width, tol.s_gamma_equals_g)?,
        check_reconstruction(lat, &signals, grid, m, n, tol.reconstruction)?,
        check_bound_sandwich(lat, &bounds, tol.bound_sandwich)?,
        check_gamma_hat_support(lat, tol.gamma_hat_support),
    ];
    Ok(VerificationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_follows_error() {
        assert!(Check::new("x", 1e-9, 1e-8).passed);
        assert!(!Check::new("x", 2e-8, 1e-8).passed);
        assert!(!Check::new("x", f64::NAN, 1.0).passed);
    }

    #[test]
    fn tolerance_overrides() {
        let mut t = Tolerances::default();
        for name in CHECK_NAMES {
            assert!(t.get(name).is_some());
        }
        t.set("S_gamma_equals_g", 3e-6).unwrap();
        assert_eq!(t.s_gamma_equals_g, 3e-6);
        assert!(t.set("nonsense", 1.0).is_err());
        assert!(t.set("reconstruction", -1.0).is_err());
    }

    #[test]
    fn report_collects_failures() {
        let r = VerificationReport { checks: vec![Check::new("a", 0.0, 1.0), Check::new("b", 2.0, 1.0)] };
        assert!(!r.passed());
        assert_eq!(r.failures().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["b"]);
        assert!(r.get("a").unwrap().passed);
    }

    #[test]
    fn aligned_step_count_prefers_integral_shifts() {
        assert_eq!(aligned_step_count(0.3, 292), 300);
        assert_eq!(aligned_step_count(0.7, 40), 40);
        assert_eq!(aligned_step_count(std::f64::consts::FRAC_1_SQRT_2, 30), 30);
    }

    #[test]
    fn dense_lattice_grid_clears_modulation_alias() {
        let lat = GaborLattice::new(1.0, 0.3, 0.1).unwrap();
        let signals = test_signals(&lat, 3, 42);
        let n = auto_n_radius(&lat);
        let grid = signal_grid(&lat, &signals, n);
        let p = 1.0 / (lat.beta() * grid.dt);
        assert!(p >= (n + 160) as f64 - 1e-6, "{p}");
        let q = lat.alpha() / grid.dt;
        assert!((q - q.round()).abs() < 1e-9);
        assert!(signals.iter().all(|s| quiet_at_edges(s, grid)));
        assert!(auto_m_radius(&lat, grid) as f64 * lat.alpha() > 0.5 * grid.dt * grid.len as f64);
    }

    #[test]
    fn commensurate_step_meets_contract() {
        for (alpha, beta) in [(1.0, 0.7), (1.0, 0.3), (2.0, 0.5), (0.5, 1.0)] {
            let lat = GaborLattice::new(alpha, beta, 0.2).unwrap();
            let dt = commensurate_step(&lat);
            assert!(dt <= alpha / 16.0 * (1.0 + 1e-12));
            let p = 1.0 / (beta * dt);
            assert!((p - p.round()).abs() < 1e-9);
        }
    }
}
