//! The beta-periodic multiplier
//! `h_hat(xi) = pi * sum_m chi_[-a, a)(xi - beta m) e^{4 pi w (xi - beta m)}`, `a = 1/(2 alpha)`,
//! through which the frame operator acts in the Fourier domain.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::lattice::GaborLattice;

/// One piece `[start, end)` of the fundamental cell on which `h_hat = coefficient * e^{4 pi w xi}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplierPiece {
    pub start: f64,
    pub end: f64,
    pub coefficient: f64,
    /// Range `first..=last` of the shifts `m` contributing on this piece.
    pub first: i64,
    pub last: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplierProfile {
    lattice: GaborLattice,
    breakpoints: Vec<f64>,
    pieces: Vec<MultiplierPiece>,
}

/// Shifts `m` with `-a <= xi - beta m < a`.
fn contributing(xi: f64, beta: f64, a: f64) -> (i64, i64) {
    let first = ((xi - a) / beta).floor() as i64 + 1;
    let last = ((xi + a) / beta).floor() as i64;
    // Guard against rounding at the half-open ends.
    let first = if xi - beta * ((first - 1) as f64) < a { first - 1 } else { first };
    let last = if xi - beta * last as f64 >= -a { last } else { last - 1 };
    (first, last)
}

fn reduce_to_cell(xi: f64, beta: f64) -> f64 {
    let r = xi - beta * ((xi + 0.5 * beta) / beta).floor();
    if r >= 0.5 * beta {
        r - beta
    } else if r < -0.5 * beta {
        r + beta
    } else {
        r
    }
}

fn piece_sum(xi: f64, first: i64, last: i64, beta: f64, w: f64) -> f64 {
    (first..=last).map(|m| (4.0 * PI * w * (xi - beta * m as f64)).exp()).sum::<f64>() * PI
}

impl MultiplierProfile {
    pub fn new(lat: &GaborLattice) -> Self {
        let beta = lat.beta();
        let a = lat.half_band();
        let lo = -0.5 * beta;
        let hi = 0.5 * beta;
        let mut cuts = vec![lo, hi];
        for edge in [a, -a] {
            let r = reduce_to_cell(edge, beta);
            if r > lo + 1e-14 * beta && r < hi - 1e-14 * beta {
                cuts.push(r);
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * beta);
        let mut pieces = Vec::with_capacity(cuts.len() - 1);
        for pair in cuts.windows(2) {
            let mid = 0.5 * (pair[0] + pair[1]);
            let (first, last) = contributing(mid, beta, a);
            let coefficient = (first..=last)
                .map(|m| (-4.0 * PI * lat.w() * beta * m as f64).exp())
                .sum::<f64>()
                * PI;
            pieces.push(MultiplierPiece { start: pair[0], end: pair[1], coefficient, first, last });
        }
        let breakpoints = cuts[1..cuts.len() - 1].to_vec();
        MultiplierProfile { lattice: *lat, breakpoints, pieces }
    }

    pub fn lattice(&self) -> &GaborLattice {
        &self.lattice
    }

    /// Jump locations of `h_hat` inside the open cell `(-beta/2, beta/2)`.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[MultiplierPiece] {
        &self.pieces
    }

    pub fn h_hat(&self, xi: f64) -> f64 {
        h_hat(xi, &self.lattice)
    }

    /// Exact `(inf, sup)` of `h_hat` from the one-sided limits at the piece ends.
    pub fn extrema(&self) -> (f64, f64) {
        let k = 4.0 * PI * self.lattice.w();
        let mut inf = f64::INFINITY;
        let mut sup = 0.0f64;
        for p in &self.pieces {
            inf = inf.min(p.coefficient * (k * p.start).exp());
            sup = sup.max(p.coefficient * (k * p.end).exp());
        }
        (inf, sup)
    }

    /// Coefficient `c_j` of the Fourier series `h_hat(xi) = sum_j c_j e^{2 pi i j xi / beta}`.
    ///
    /// Convolution with the time-domain kernel is then `(u * h)(x) = sum_j c_j u(x + j/beta)`.
    pub fn fourier_coefficient(&self, j: i64) -> Complex64 {
        self.series_coefficient(j, false)
    }

    /// Same as [`fourier_coefficient`](Self::fourier_coefficient) for `1/h_hat`.
    pub fn reciprocal_fourier_coefficient(&self, j: i64) -> Complex64 {
        self.series_coefficient(j, true)
    }

    fn series_coefficient(&self, j: i64, reciprocal: bool) -> Complex64 {
        let beta = self.lattice.beta();
        let k = 4.0 * PI * self.lattice.w();
        let sign = if reciprocal { -1.0 } else { 1.0 };
        let s = Complex64::new(sign * k, -2.0 * PI * j as f64 / beta);
        let mut acc = Complex64::new(0.0, 0.0);
        for p in &self.pieces {
            let c = if reciprocal { 1.0 / p.coefficient } else { p.coefficient };
            let diff = (s * p.end).exp() - (s * p.start).exp();
            acc += diff * c;
        }
        acc / s / beta
    }
}

/// `h_hat(xi)`, summed over the `n` or `n + 1` shifts whose interval contains `xi`.
pub fn h_hat(xi: f64, lat: &GaborLattice) -> f64 {
    let beta = lat.beta();
    let r = reduce_to_cell(xi, beta);
    let (first, last) = contributing(r, beta, lat.half_band());
    piece_sum(r, first, last, beta, lat.w())
}

pub fn build_multiplier(lat: &GaborLattice) -> MultiplierProfile {
    MultiplierProfile::new(lat)
}

pub fn h_hat_extrema(lat: &GaborLattice) -> (f64, f64) {
    MultiplierProfile::new(lat).extrema()
}

/// `pi e^{2 pi w xi} / h_hat(xi)` on `[-1/(2 alpha), 1/(2 alpha))`, zero elsewhere.
pub fn dual_fourier_profile(xi: f64, lat: &GaborLattice) -> f64 {
    let a = lat.half_band();
    if xi < -a || xi >= a {
        return 0.0;
    }
    PI * (2.0 * PI * lat.w() * xi).exp() / h_hat(xi, lat)
}
