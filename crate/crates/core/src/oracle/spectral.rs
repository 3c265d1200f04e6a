//! Extremal Rayleigh quotients of the frame operator: random trial signals, refined by power
//! iteration on the truncated frame operator (upper bound) and on the inverse operator (lower).

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

use super::pw::PwTestSignal;
use super::quadrature::TruncatedSystem;
use crate::closed_form::FrameOperator;
use crate::error::{GaborError, Result};
use crate::lattice::{cauchy, GaborLattice};
use crate::signal::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerIteration {
    pub eigenvalue: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest eigenvalue of a Hermitian positive operator by power iteration with Rayleigh quotients.
///
/// Stops when the relative change of the quotient drops below `tolerance` or after
/// `max_iterations` steps; the last quotient is returned either way.
pub fn power_iteration(
    mut apply: impl FnMut(&[Complex64]) -> Vec<Complex64>,
    start: Vec<Complex64>,
    max_iterations: usize,
    tolerance: f64,
) -> PowerIteration {
    let mut v = start;
    normalize(&mut v);
    let mut prev = f64::NAN;
    for it in 1..=max_iterations {
        let av = apply(&v);
        let rq = v.iter().zip(&av).map(|(x, y)| (x.conj() * y).re).sum::<f64>();
        v = av;
        let norm = normalize(&mut v);
        if norm == 0.0 {
            return PowerIteration { eigenvalue: 0.0, iterations: it, converged: true };
        }
        if (rq - prev).abs() <= tolerance * rq.abs() {
            return PowerIteration { eigenvalue: rq, iterations: it, converged: true };
        }
        prev = rq;
    }
    PowerIteration { eigenvalue: prev, iterations: max_iterations, converged: false }
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

fn random_start(len: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalBoundsConfig {
    pub trials: usize,
    pub m_radius: usize,
    pub n_radius: usize,
    /// Grid for trial quotients and the truncated frame operator.
    pub frame_grid: GridSpec,
    /// Grid for the inverse operator.
    pub inverse_grid: GridSpec,
    pub seed: u64,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl EmpiricalBoundsConfig {
    /// Grids derived from the truncation: the frame grid spans `1.5 alpha M` (three quarters of the
    /// time range covered by the atoms), resolves `beta N` with margin and samples the window finely enough
    /// that aliasing of its spectral tail stays below `e^{-30}`.
    pub fn new(lat: &GaborLattice, trials: usize, m_radius: usize, n_radius: usize) -> Self {
        let beta = lat.beta();
        let alias = (30.0 / (2.0 * PI * lat.w() * beta)).ceil() as usize;
        let p = (5 * n_radius).div_ceil(2).max(alias).max(8);
        let frame_grid = GridSpec::commensurate(1.5 * lat.alpha() * m_radius as f64, beta, p);
        let q = (16.0 / lat.density() - 1e-9).ceil() as usize;
        let inverse_grid = GridSpec::commensurate(512.0 * lat.alpha(), beta, q);
        EmpiricalBoundsConfig {
            trials,
            m_radius,
            n_radius,
            frame_grid,
            inverse_grid,
            seed: 42,
            max_iterations: 200,
            tolerance: 1e-9,
        }
    }

    /// Truncation large enough that the coefficient energy of the window's spectral tail,
    /// `e^{-4 pi w beta N}`, is negligible.
    pub fn for_lattice(lat: &GaborLattice, trials: usize) -> Self {
        let n_radius = (12.0 / (PI * lat.w() * lat.beta())).ceil() as usize + 4;
        let m_radius = (48.0 / lat.alpha()).ceil() as usize;
        Self::new(lat, trials, m_radius, n_radius)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalBounds {
    pub a_emp: f64,
    pub b_emp: f64,
    /// Smallest and largest trial quotient `sum |c|^2 / ||f||^2`.
    pub trial_range: (f64, f64),
    pub upper: PowerIteration,
    /// Power iteration on `S^{-1}`; `a_emp` uses the reciprocal of its eigenvalue.
    pub lower: PowerIteration,
    pub diagnostic: Option<String>,
}

pub fn empirical_frame_bounds_with(lat: &GaborLattice, cfg: &EmpiricalBoundsConfig) -> Result<EmpiricalBounds> {
    if cfg.trials == 0 {
        return Err(GaborError::param("at least one trial signal is needed"));
    }
    if cfg.m_radius == 0 || cfg.n_radius == 0 {
        return Err(GaborError::param("truncation radii must be positive"));
    }
    let g = cfg.frame_grid;
    let w = lat.w();
    let sys = TruncatedSystem::new(lat, g.t0, g.dt, g.len, cfg.m_radius, cfg.n_radius, move |t| cauchy(t, w));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for _ in 0..cfg.trials {
        let band = rng.random_range(-2i64..2);
        let signal = PwTestSignal::for_lattice(band, rng.random_range(0..u64::MAX), lat).sample(g.t0, g.dt, g.len);
        let energy: f64 = sys.analysis(&signal.values).iter().map(|c| c.norm_sqr()).sum();
        let q = energy / signal.norm_sqr();
        lo = lo.min(q);
        hi = hi.max(q);
    }

    let upper = power_iteration(
        |v| sys.synthesis(&sys.analysis(v)),
        random_start(g.len, cfg.seed ^ 0x5eed),
        cfg.max_iterations,
        cfg.tolerance,
    );

    let ig = cfg.inverse_grid;
    let inverse = FrameOperator::new(lat).prepare(ig.t0, ig.dt, ig.len, true)?;
    let lower = power_iteration(
        |v| inverse.apply(v),
        random_start(ig.len, cfg.seed ^ 0xa11ce),
        cfg.max_iterations,
        cfg.tolerance,
    );

    let mut notes = Vec::new();
    if !upper.converged {
        notes.push(format!("upper power iteration stopped after {} steps", upper.iterations));
    }
    if !lower.converged {
        notes.push(format!("lower power iteration stopped after {} steps", lower.iterations));
    }
    if !(lower.eigenvalue > 0.0) {
        return Err(GaborError::Numerical("inverse operator power iteration produced no positive eigenvalue".into()));
    }
    Ok(EmpiricalBounds {
        a_emp: lo.min(1.0 / lower.eigenvalue),
        b_emp: hi.max(upper.eigenvalue),
        trial_range: (lo, hi),
        upper,
        lower,
        diagnostic: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

/// Empirical frame bounds with grids derived from the truncation radii.
pub fn empirical_frame_bounds(
    lat: &GaborLattice,
    trials: usize,
    m_radius: usize,
    n_radius: usize,
) -> Result<EmpiricalBounds> {
    empirical_frame_bounds_with(lat, &EmpiricalBoundsConfig::new(lat, trials, m_radius, n_radius))
}
