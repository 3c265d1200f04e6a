//! Band-limited test signals `f_k` with smooth, compactly supported spectra inside `[k, k + 1]`.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

use super::gauss::gauss_legendre;
use crate::lattice::{ComplexValue, GaborLattice};
use crate::signal::SampledSignal;

/// Gaussian width factor of the bump profile.
const BUMP_SHARPNESS: f64 = 5.0;
const BUMPS: usize = 3;

/// `exp(-K^2 x^2 / 2 - 0.5/(1 - x^2))` on `(-1, 1)`, zero outside: smooth with compact support.
pub fn bump_profile(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return 0.0;
    }
    (-0.5 * BUMP_SHARPNESS * BUMP_SHARPNESS * x * x - 0.5 / (1.0 - x * x)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralBump {
    pub center: f64,
    pub radius: f64,
    pub weight: ComplexValue,
}

/// `f_k(t) = int f_hat(xi) e^{2 pi i xi t} d xi` with `f_hat` a finite sum of bumps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PwTestSignal {
    pub band: i64,
    /// Interval inside `[band, band + 1]` holding every bump.
    pub support: (f64, f64),
    pub bumps: Vec<SpectralBump>,
}

impl PwTestSignal {
    /// Random bumps spread over the whole band `[k, k + 1]`.
    pub fn new(band: i64, seed: u64) -> Self {
        Self::within(band, band as f64, band as f64 + 1.0, seed)
    }

    /// Random bumps confined to `[lo, hi]`, which must lie inside `[band, band + 1]`.
    pub fn within(band: i64, lo: f64, hi: f64, seed: u64) -> Self {
        assert!(lo >= band as f64 && hi <= band as f64 + 1.0 && lo < hi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = 0.5 * (lo + hi);
        let r = 0.5 * (hi - lo);
        let bumps = (0..BUMPS)
            .map(|_| {
                let center = c + rng.random_range(-0.2..0.2) * r;
                let radius = (center - lo).min(hi - center);
                let weight = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                SpectralBump { center, radius, weight }
            })
            .collect();
        PwTestSignal { band, support: (lo, hi), bumps }
    }

    /// Bumps placed in the widest sub-interval of `[k, k + 1]` that avoids the frequencies
    /// `beta Z` and `+-1/alpha + beta Z`, where the window and its dual have spectral jumps.
    /// Frame coefficients of such signals decay rapidly in both indices.
    pub fn for_lattice(band: i64, seed: u64, lat: &GaborLattice) -> Self {
        let (lo, hi) = widest_gap(band, lat);
        Self::within(band, lo, hi, seed)
    }

    pub fn spectrum(&self, xi: f64) -> ComplexValue {
        self.bumps.iter().map(|b| b.weight * bump_profile((xi - b.center) / b.radius)).sum()
    }

    /// `int |f_hat|^2`.
    pub fn spectral_norm_sqr(&self) -> f64 {
        let (lo, hi) = self.support;
        gauss_legendre(lo, hi, 400).iter().map(|&(x, w)| w * self.spectrum(x).norm_sqr()).sum()
    }

    /// Quadrature nodes (frequency, weight * spectrum) resolving `e^{2 pi i xi t}` for `|t| <= reach`.
    pub fn nodes(&self, reach: f64) -> Vec<(f64, Complex64)> {
        let mut out = Vec::new();
        for b in &self.bumps {
            let degree = 120 + (2.0 * PI * b.radius * reach).ceil() as usize;
            for (x, w) in gauss_legendre(b.center - b.radius, b.center + b.radius, degree) {
                out.push((x, b.weight * (w * bump_profile((x - b.center) / b.radius))));
            }
        }
        out
    }

    /// `f_k(z)` at a complex point.
    pub fn eval(&self, z: Complex64) -> ComplexValue {
        eval_with(&self.nodes(z.norm()), z)
    }

    /// `h_k(z) = e^{-2 pi i k z} f_k(z)`, whose spectrum lies in `[0, 1]`.
    pub fn h(&self, z: Complex64) -> ComplexValue {
        let nodes = self.nodes(z.norm());
        let k = self.band as f64;
        nodes.iter().map(|&(x, c)| c * (Complex64::new(0.0, 2.0 * PI * (x - k)) * z).exp()).sum()
    }

    pub fn sample(&self, t0: f64, dt: f64, len: usize) -> SampledSignal {
        let reach = t0.abs().max((t0 + dt * len as f64).abs());
        let nodes = self.nodes(reach);
        SampledSignal::from_fn(t0, dt, len, |t| eval_with(&nodes, Complex64::new(t, 0.0)))
    }

    /// Samples on the standard 64-unit grid.
    pub fn sample_desk(&self) -> SampledSignal {
        let len = crate::signal::DESK_SAMPLES;
        let dt = crate::signal::DESK_PERIOD / len as f64;
        self.sample(-0.5 * crate::signal::DESK_PERIOD, dt, len)
    }
}

fn eval_with(nodes: &[(f64, Complex64)], z: Complex64) -> Complex64 {
    nodes.iter().map(|&(x, c)| c * (Complex64::new(0.0, 2.0 * PI * x) * z).exp()).sum()
}

fn widest_gap(band: i64, lat: &GaborLattice) -> (f64, f64) {
    let lo = band as f64;
    let hi = lo + 1.0;
    let beta = lat.beta();
    let mut cuts = vec![lo, hi];
    for offset in [0.0, 1.0 / lat.alpha(), -1.0 / lat.alpha()] {
        let first = ((lo - offset) / beta).ceil() as i64;
        let last = ((hi - offset) / beta).floor() as i64;
        for m in first..=last {
            let x = offset + beta * m as f64;
            if x > lo && x < hi {
                cuts.push(x);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2).map(|p| (p[0], p[1])).max_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0))).unwrap()
}

/// A test signal in band `k` together with its samples on the standard grid.
pub fn pw_test_signal(band: i64, seed: u64) -> (PwTestSignal, SampledSignal) {
    let s = PwTestSignal::new(band, seed);
    let sampled = s.sample_desk();
    (s, sampled)
}
