//! The frame operator `S` and its inverse as multiplier sandwiches:
//! `S f = (pi/alpha) / sin(pi(x - iw)/alpha) * ((f / sin(pi(t + iw)/alpha)) * h)` and
//! `S^{-1} f = (alpha/pi) sin(pi(t + iw)/alpha) * ((f sin(pi(x - iw)/alpha)) * h~)`,
//! where `h` and `h~` act as multiplication by `h_hat` and `1/h_hat` in the Fourier domain.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

use super::multiplier::MultiplierProfile;
use crate::error::{GaborError, Result};
use crate::lattice::GaborLattice;
use crate::signal::{GridSpec, SampledSignal};
use crate::special::{cis, sin_complex};

/// How samples outside the grid are treated when convolving.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    /// The signal vanishes off the grid. The convolution uses the Fourier series of the
    /// beta-periodic multiplier, truncated to the shifts `j/beta` that stay inside the grid, and
    /// is exact on the grid for such signals.
    #[default]
    Windowed,
    /// The grid holds one period of a periodic signal and the multiplier is sampled on the DFT
    /// frequencies. `S` and `S^{-1}` are then exact inverses of each other.
    Periodic,
}

#[derive(Debug, Clone)]
pub struct FrameOperator {
    profile: MultiplierProfile,
    boundary: Boundary,
}

enum Direction {
    Forward,
    Inverse,
}

impl FrameOperator {
    pub fn new(lat: &GaborLattice) -> Self {
        FrameOperator { profile: MultiplierProfile::new(lat), boundary: Boundary::Windowed }
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn lattice(&self) -> &GaborLattice {
        self.profile.lattice()
    }

    pub fn profile(&self) -> &MultiplierProfile {
        &self.profile
    }

    /// Rejects grids with spacing above `alpha/16` or sampling rate below `4 (1/alpha + n beta)`.
    pub fn check_grid(&self, dt: f64) -> Result<()> {
        let lat = self.lattice();
        let rate = 4.0 * (1.0 / lat.alpha() + lat.band_index() as f64 * lat.beta());
        let slack = 1.0 + 1e-12;
        if dt > lat.alpha() / 16.0 * slack {
            return Err(GaborError::Discretization(format!(
                "spacing {dt} exceeds alpha/16 = {}",
                lat.alpha() / 16.0
            )));
        }
        if 1.0 / dt < rate / slack {
            return Err(GaborError::Discretization(format!(
                "sampling rate {} is below 4 (1/alpha + n beta) = {rate}",
                1.0 / dt
            )));
        }
        Ok(())
    }

    pub fn apply(&self, f: &SampledSignal) -> Result<SampledSignal> {
        self.sandwich(f, Direction::Forward)
    }

    pub fn apply_inverse(&self, f: &SampledSignal) -> Result<SampledSignal> {
        self.sandwich(f, Direction::Inverse)
    }

    fn inner_factor(&self, t: f64, dir: &Direction) -> Complex64 {
        let lat = self.lattice();
        match dir {
            Direction::Forward => sin_complex(Complex64::new(t, lat.w()) * (PI / lat.alpha())).inv(),
            Direction::Inverse => sin_complex(Complex64::new(t, -lat.w()) * (PI / lat.alpha())),
        }
    }

    fn outer_factor(&self, t: f64, dir: &Direction) -> Complex64 {
        let lat = self.lattice();
        let a = lat.alpha();
        match dir {
            Direction::Forward => sin_complex(Complex64::new(t, -lat.w()) * (PI / a)).inv() * (PI / a),
            Direction::Inverse => sin_complex(Complex64::new(t, lat.w()) * (PI / a)) * (a / PI),
        }
    }

    fn coefficient(&self, j: i64, dir: &Direction) -> Complex64 {
        match dir {
            Direction::Forward => self.profile.fourier_coefficient(j),
            Direction::Inverse => self.profile.reciprocal_fourier_coefficient(j),
        }
    }

    fn sandwich(&self, f: &SampledSignal, dir: Direction) -> Result<SampledSignal> {
        let plan = self.plan(f.t0, f.dt, f.len(), dir)?;
        Ok(SampledSignal { t0: f.t0, dt: f.dt, values: plan.apply(&f.values) })
    }

    /// Precompute the sine factors and the sampled multiplier for repeated use on one grid.
    pub fn prepare(&self, t0: f64, dt: f64, len: usize, inverse: bool) -> Result<PreparedSandwich> {
        let dir = if inverse { Direction::Inverse } else { Direction::Forward };
        self.plan(t0, dt, len, dir)
    }

    fn plan(&self, t0: f64, dt: f64, len: usize, dir: Direction) -> Result<PreparedSandwich> {
        self.check_grid(dt)?;
        if len < 2 {
            return Err(GaborError::param("grid needs at least two samples"));
        }
        let time = |l: usize| t0 + dt * l as f64;
        let inner = (0..len).map(|l| self.inner_factor(time(l), &dir)).collect();
        let outer = (0..len).map(|l| self.outer_factor(time(l), &dir)).collect();
        let fft_len = match self.boundary {
            Boundary::Windowed => (2 * len).next_power_of_two(),
            Boundary::Periodic => len,
        };
        let multiplier = match self.boundary {
            Boundary::Windowed => self.windowed_multiplier(len, fft_len, dt, &dir),
            Boundary::Periodic => (0..len)
                .map(|q| {
                    let h = self.profile.h_hat(dft_frequency(q, len, dt));
                    Complex64::new(if matches!(dir, Direction::Forward) { h } else { 1.0 / h }, 0.0)
                })
                .collect(),
        };
        let mut planner = FftPlanner::<f64>::new();
        Ok(PreparedSandwich {
            inner,
            outer,
            multiplier,
            forward: planner.plan_fft_forward(fft_len),
            inverse: planner.plan_fft_inverse(fft_len),
        })
    }

    /// `sum_{|j| <= J} c_j e^{2 pi i j xi / beta}` on the padded DFT frequencies.
    fn windowed_multiplier(&self, len: usize, padded: usize, dt: f64, dir: &Direction) -> Vec<Complex64> {
        let shifts = self.max_shift(len, dt);
        let beta = self.lattice().beta();
        let mut planner = FftPlanner::<f64>::new();
        match self.integer_lag(dt) {
            Some(p) => {
                let mut kernel = vec![Complex64::new(0.0, 0.0); padded];
                for j in -shifts..=shifts {
                    let pos = (j * p as i64).rem_euclid(padded as i64) as usize;
                    kernel[pos] += self.coefficient(j, dir);
                }
                planner.plan_fft_inverse(padded).process(&mut kernel);
                kernel
            }
            None => {
                let coeffs: Vec<Complex64> = (-shifts..=shifts).map(|j| self.coefficient(j, dir)).collect();
                let centre = shifts as usize;
                (0..padded)
                    .map(|q| {
                        let theta = 2.0 * PI * dft_frequency(q, padded, dt) / beta;
                        let mut acc = coeffs[centre];
                        let step = cis(theta);
                        let mut e = step;
                        for j in 1..=centre {
                            if j % 32 == 0 {
                                e = cis(theta * j as f64);
                            }
                            acc += coeffs[centre + j] * e + coeffs[centre - j] * e.conj();
                            e *= step;
                        }
                        acc
                    })
                    .collect()
            }
        }
    }

    /// Number of samples per shift `1/beta` when that is an integer.
    fn integer_lag(&self, dt: f64) -> Option<usize> {
        let step = 1.0 / (self.lattice().beta() * dt);
        let p = step.round();
        (p >= 1.0 && (step - p).abs() <= 1e-9 * step).then_some(p as usize)
    }

    fn max_shift(&self, len: usize, dt: f64) -> i64 {
        ((len - 1) as f64 * dt * self.lattice().beta() * (1.0 + 1e-12)).floor() as i64
    }

    /// `S f` at selected grid indices, by direct summation over the shifts `j/beta`.
    ///
    /// Agrees with [`apply`](Self::apply) under [`Boundary::Windowed`] but needs only the
    /// requested outputs, which keeps very long grids affordable. Requires `1/(beta dt)` to be
    /// an integer.
    pub fn apply_at(&self, f: &SampledSignal, indices: &[usize]) -> Result<Vec<Complex64>> {
        let grid = GridSpec { t0: f.t0, dt: f.dt, len: f.len() };
        self.stream_at(grid, |l, _| f.values[l], indices)
    }

    /// Like [`apply_at`](Self::apply_at) for a signal given as a function on `grid`. Each sample
    /// is evaluated once, so memory stays proportional to the number of outputs.
    pub fn apply_at_fn(
        &self,
        grid: GridSpec,
        f: impl Fn(f64) -> Complex64,
        indices: &[usize],
    ) -> Result<Vec<Complex64>> {
        self.stream_at(grid, |_, t| f(t), indices)
    }

    fn stream_at(
        &self,
        grid: GridSpec,
        sample: impl Fn(usize, f64) -> Complex64,
        indices: &[usize],
    ) -> Result<Vec<Complex64>> {
        self.check_grid(grid.dt)?;
        let p = self.integer_lag(grid.dt).ok_or_else(|| {
            GaborError::Discretization("sparse evaluation needs 1/(beta dt) to be an integer".into())
        })?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= grid.len) {
            return Err(GaborError::param(format!("index {bad} outside grid of {}", grid.len)));
        }
        let shifts = self.max_shift(grid.len, grid.dt);
        let dir = Direction::Forward;
        let coeffs: Vec<Complex64> = (-shifts..=shifts).map(|j| self.coefficient(j, &dir)).collect();
        let mut by_residue: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p];
        for (k, &i) in indices.iter().enumerate() {
            by_residue[i % p].push((k, i));
        }
        let mut acc = vec![Complex64::new(0.0, 0.0); indices.len()];
        for l in 0..grid.len {
            let targets = &by_residue[l % p];
            if targets.is_empty() {
                continue;
            }
            let t = grid.time(l);
            let u = sample(l, t) * self.inner_factor(t, &dir);
            for &(k, i) in targets {
                let j = (l as i64 - i as i64) / p as i64;
                if j.abs() <= shifts {
                    acc[k] += coeffs[(j + shifts) as usize] * u;
                }
            }
        }
        Ok(indices.iter().zip(acc).map(|(&i, a)| a * self.outer_factor(grid.time(i), &dir)).collect())
    }
}

/// `S` or `S^{-1}` bound to one grid.
pub struct PreparedSandwich {
    inner: Vec<Complex64>,
    outer: Vec<Complex64>,
    multiplier: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl PreparedSandwich {
    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(f.len(), self.len());
        let fft_len = self.multiplier.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); fft_len];
        for (b, (v, s)) in buf.iter_mut().zip(f.iter().zip(&self.inner)) {
            *b = v * s;
        }
        self.forward.process(&mut buf);
        for (b, m) in buf.iter_mut().zip(&self.multiplier) {
            *b *= m;
        }
        self.inverse.process(&mut buf);
        let norm = 1.0 / fft_len as f64;
        buf.truncate(f.len());
        for (b, s) in buf.iter_mut().zip(&self.outer) {
            *b *= s * norm;
        }
        buf
    }
}

/// Frequency of DFT bin `q` for `len` samples spaced `dt`, in `[-1/(2dt), 1/(2dt))`.
fn dft_frequency(q: usize, len: usize, dt: f64) -> f64 {
    let signed = if 2 * q < len { q as f64 } else { q as f64 - len as f64 };
    signed / (len as f64 * dt)
}

pub fn frame_operator_apply(f: &SampledSignal, lat: &GaborLattice) -> Result<SampledSignal> {
    FrameOperator::new(lat).apply(f)
}

pub fn inverse_frame_operator_apply(f: &SampledSignal, lat: &GaborLattice) -> Result<SampledSignal> {
    FrameOperator::new(lat).apply_inverse(f)
}
