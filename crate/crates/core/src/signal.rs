use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{GaborError, Result};
use crate::lattice::ComplexValue;

/// Uniform grid `t0 + l dt`, `l < len`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub t0: f64,
    pub dt: f64,
    pub len: usize,
}

impl GridSpec {
    #[inline]
    pub fn time(&self, l: usize) -> f64 {
        self.t0 + self.dt * l as f64
    }

    pub fn sample(&self, f: impl FnMut(f64) -> ComplexValue) -> SampledSignal {
        SampledSignal::from_fn(self.t0, self.dt, self.len, f)
    }

    /// Grid centred at zero with spacing exactly `1/(beta p)` and about `period` wide.
    pub fn commensurate(period: f64, beta: f64, p: usize) -> Self {
        let dt = 1.0 / (beta * p as f64);
        let half = (0.5 * period / dt).ceil() as usize;
        GridSpec { t0: -(half as f64) * dt, dt, len: 2 * half }
    }
}

/// Complex samples `values[l] = f(t0 + l dt)` on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledSignal {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<ComplexValue>,
}

/// Width of the standard grid, centred at the origin.
pub const DESK_PERIOD: f64 = 64.0;
/// Number of samples on the standard grid.
pub const DESK_SAMPLES: usize = 1 << 14;

impl SampledSignal {
    pub fn new(t0: f64, dt: f64, values: Vec<ComplexValue>) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) || !t0.is_finite() {
            return Err(GaborError::param(format!("invalid grid origin/spacing {t0}, {dt}")));
        }
        if values.len() < 2 {
            return Err(GaborError::param("a sampled signal needs at least two samples"));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(GaborError::param("non-finite sample"));
        }
        Ok(SampledSignal { t0, dt, values })
    }

    pub fn from_fn(t0: f64, dt: f64, len: usize, mut f: impl FnMut(f64) -> ComplexValue) -> Self {
        let values = (0..len).map(|l| f(t0 + dt * l as f64)).collect();
        SampledSignal { t0, dt, values }
    }

    /// Grid of `len` points spanning `[-period/2, period/2)`.
    pub fn centered(period: f64, len: usize, f: impl FnMut(f64) -> ComplexValue) -> Self {
        let dt = period / len as f64;
        Self::from_fn(-0.5 * period, dt, len, f)
    }

    /// The standard 64-unit, 2^14-sample grid.
    pub fn desk(f: impl FnMut(f64) -> ComplexValue) -> Self {
        Self::centered(DESK_PERIOD, DESK_SAMPLES, f)
    }

    pub fn zeros_like(&self) -> Self {
        SampledSignal { t0: self.t0, dt: self.dt, values: vec![Complex64::new(0.0, 0.0); self.len()] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn time(&self, l: usize) -> f64 {
        self.t0 + self.dt * l as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |l| self.time(l))
    }

    /// `int f conj(g)` by the rectangle rule, which is the trapezoid rule for decayed ends.
    pub fn inner(&self, other: &SampledSignal) -> ComplexValue {
        debug_assert_eq!(self.len(), other.len());
        self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum::<Complex64>() * self.dt
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.dt
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `||self - other|| / ||other||` restricted to `|t| <= radius`.
    pub fn relative_error_within(&self, reference: &SampledSignal, radius: f64) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for (l, (a, b)) in self.values.iter().zip(&reference.values).enumerate() {
            if self.time(l).abs() <= radius {
                num += (a - b).norm_sqr();
                den += b.norm_sqr();
            }
        }
        (num / den).sqrt()
    }

    /// `||self - other|| / ||other||` over the whole grid.
    pub fn relative_error(&self, reference: &SampledSignal) -> f64 {
        let num: f64 = self.values.iter().zip(&reference.values).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = reference.values.iter().map(|b| b.norm_sqr()).sum();
        (num / den).sqrt()
    }

    /// Largest end-point magnitude relative to the peak; large values mean the grid cuts the signal.
    pub fn edge_fraction(&self) -> f64 {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        self.values[0].norm().max(self.values[self.len() - 1].norm()) / peak
    }

    /// Fraction of the DFT energy at frequencies outside `[lo, hi]`.
    pub fn spectral_fraction_outside(&self, lo: f64, hi: f64) -> f64 {
        let mut buf = self.values.clone();
        FftPlanner::<f64>::new().plan_fft_forward(buf.len()).process(&mut buf);
        let n = buf.len();
        let (mut total, mut outside) = (0.0, 0.0);
        for (q, v) in buf.iter().enumerate() {
            let k = if 2 * q < n { q as f64 } else { q as f64 - n as f64 };
            let xi = k / (n as f64 * self.dt);
            total += v.norm_sqr();
            if !(lo..=hi).contains(&xi) {
                outside += v.norm_sqr();
            }
        }
        if total == 0.0 { 0.0 } else { outside / total }
    }

    pub fn scale(&mut self, c: ComplexValue) {
        self.values.iter_mut().for_each(|v| *v *= c);
    }

    pub fn axpy(&mut self, c: ComplexValue, other: &SampledSignal) {
        for (v, o) in self.values.iter_mut().zip(&other.values) {
            *v += c * o;
        }
    }
}
