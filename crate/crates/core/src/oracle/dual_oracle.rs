//! The dual window by direct quadrature of its Fourier profile.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gauss::gauss_legendre;
use crate::closed_form::dual_fourier_profile;
use crate::lattice::{ComplexValue, GaborLattice};
use crate::signal::SampledSignal;
use crate::special::sin_complex;

/// `gamma(t) = (alpha/pi) sin(pi (t + iw)/alpha) int_{-a}^{a} P(xi) e^{2 pi i t xi} d xi`, with the
/// profile `P = pi e^{2 pi w xi} / h_hat` integrated piecewise between its jumps.
pub struct DualWindowOracle {
    lattice: GaborLattice,
    nodes: Vec<(f64, f64)>,
}

impl DualWindowOracle {
    /// Rule accurate for `|t| <= reach`; `refinement` multiplies the node count.
    pub fn new(lat: &GaborLattice, reach: f64, refinement: f64) -> Self {
        let a = lat.half_band();
        let beta = lat.beta();
        let mut cuts = vec![-a, a];
        for edge in [-a, a] {
            let first = ((-a - edge) / beta).ceil() as i64;
            let last = ((a - edge) / beta).floor() as i64;
            for m in first..=last {
                let x = edge + beta * m as f64;
                if x > -a + 1e-13 && x < a - 1e-13 {
                    cuts.push(x);
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-13);
        let mut nodes = Vec::new();
        for p in cuts.windows(2) {
            let width = p[1] - p[0];
            let degree = ((40.0 + 2.0 * PI * width * reach) * refinement).ceil() as usize;
            for (x, w) in gauss_legendre(p[0], p[1], degree) {
                nodes.push((x, w * dual_fourier_profile(x, lat)));
            }
        }
        DualWindowOracle { lattice: *lat, nodes }
    }

    pub fn eval(&self, t: f64) -> ComplexValue {
        let integral: Complex64 = self
            .nodes
            .iter()
            .map(|&(x, c)| {
                let (s, co) = (2.0 * PI * t * x).sin_cos();
                Complex64::new(c * co, c * s)
            })
            .sum();
        let alpha = self.lattice.alpha();
        sin_complex(Complex64::new(t, self.lattice.w()) * (PI / alpha)) * integral * (alpha / PI)
    }
}

pub fn dual_window_oracle(ts: &[f64], lat: &GaborLattice) -> Vec<ComplexValue> {
    let reach = ts.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let oracle = DualWindowOracle::new(lat, reach, 1.0);
    ts.iter().map(|&t| oracle.eval(t)).collect()
}

/// The oracle on a uniform grid.
pub fn dual_window_oracle_sampled(t0: f64, dt: f64, len: usize, lat: &GaborLattice) -> SampledSignal {
    let reach = t0.abs().max((t0 + dt * len as f64).abs());
    let oracle = DualWindowOracle::new(lat, reach, 1.0);
    SampledSignal::from_fn(t0, dt, len, |t| oracle.eval(t))
}
