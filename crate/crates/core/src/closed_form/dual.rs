//! Closed-form canonical dual window `gamma = S^{-1} g` for every density `alpha beta <= 1`.
//!
//! With `zeta = t + i w`, `x = 2 pi beta w`, `z = 2 pi beta (w + i t)` and `n = floor(1/(alpha beta))`,
//! `gamma(t) pi zeta = (alpha/pi) sin(pi zeta/alpha) [R_1 sin(2 pi c zeta) + R_2 e^{i pi beta zeta}
//! sin(pi (beta - 2c) zeta)]` where `c` is `lambda` (even `n`) or `delta` (odd `n`) and `R_1, R_2`
//! are ratios of geometric sums `sum e^{m z} / sum e^{2 m x}` over consecutive ranges of `m`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{GaborError, Result};
use crate::lattice::{ComplexValue, GaborLattice, DENSITY_SNAP};
use crate::special::{geometric_tail, sin_complex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `alpha beta >= 1/2`, written with `epsilon = 1/alpha - beta`.
    Half,
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualWindowParams {
    pub n: u32,
    pub k: u32,
    pub branch: Branch,
    pub epsilon: f64,
    pub lambda: f64,
    pub delta: f64,
}

impl DualWindowParams {
    /// Branch data for the lattice; at `alpha beta = 1/n` the larger `n` is used.
    pub fn new(lat: &GaborLattice) -> Self {
        Self::build(lat, lat.band_index())
    }

    /// Branch data for an explicit `n`, valid when `1/(n+1) <= alpha beta <= 1/n`.
    pub fn for_band(lat: &GaborLattice, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(GaborError::param("band index must be positive"));
        }
        let r = 1.0 / lat.density();
        let tol = DENSITY_SNAP * r.max(1.0);
        if r < n as f64 - tol || r > (n + 1) as f64 + tol {
            return Err(GaborError::param(format!(
                "1/(alpha beta) = {r} is outside [{n}, {}]",
                n + 1
            )));
        }
        Ok(Self::build(lat, n))
    }

    fn build(lat: &GaborLattice, n: u32) -> Self {
        let beta = lat.beta();
        let a = lat.half_band();
        let k = n / 2;
        let clamp = |v: f64, hi: f64| v.max(0.0).min(hi);
        let epsilon = clamp(2.0 * a - beta, beta);
        let lambda = clamp(a - k as f64 * beta, 0.5 * beta);
        let delta = clamp((k + 1) as f64 * beta - a, 0.5 * beta);
        let branch = match n {
            1 => Branch::Half,
            _ if n.is_multiple_of(2) => Branch::Even,
            _ => Branch::Odd,
        };
        DualWindowParams { n, k, branch, epsilon, lambda, delta }
    }
}

/// Ratio `sum_{m=lo}^{hi} e^{m z} / sum_{m=lo}^{hi} e^{2 m x}` for `hi >= 0`.
#[derive(Debug, Clone, Copy)]
struct SumRatio {
    hi: i64,
    count: u32,
    inv_den: f64,
}

impl SumRatio {
    fn new(lo: i64, hi: i64, x: f64) -> Self {
        let count = (hi - lo + 1) as u32;
        let den = geometric_tail(Complex64::new(2.0 * x, 0.0), count).re;
        SumRatio { hi, count, inv_den: 1.0 / den }
    }

    fn eval(&self, z: Complex64, x: f64) -> Complex64 {
        let lead = (z - 2.0 * x) * self.hi as f64;
        lead.exp() * geometric_tail(z, self.count) * self.inv_den
    }
}

#[derive(Debug, Clone, Copy)]
enum Terms {
    Half { mid_minus: f64, mid_plus: f64 },
    General { first: SumRatio, second: SumRatio },
}

/// Evaluator for the closed-form dual window of one lattice.
#[derive(Debug, Clone, Copy)]
pub struct DualWindow {
    lattice: GaborLattice,
    params: DualWindowParams,
    /// Frequency `c` of the first sine (`lambda`, `delta`, or `(beta - epsilon)/2`).
    c: f64,
    terms: Terms,
}

impl DualWindow {
    pub fn new(lat: &GaborLattice) -> Self {
        Self::with_params(lat, DualWindowParams::new(lat))
    }

    /// Evaluate a specific branch; used to compare neighbouring formulas at `alpha beta = 1/n`.
    pub fn for_band(lat: &GaborLattice, n: u32) -> Result<Self> {
        Ok(Self::with_params(lat, DualWindowParams::for_band(lat, n)?))
    }

    fn with_params(lat: &GaborLattice, params: DualWindowParams) -> Self {
        let beta = lat.beta();
        let x = 2.0 * PI * beta * lat.w();
        let k = params.k as i64;
        let (c, terms) = match params.branch {
            Branch::Half => {
                let e = (-2.0 * x).exp();
                let terms = Terms::Half { mid_minus: e / (1.0 + e), mid_plus: 1.0 / (1.0 + e) };
                (0.5 * (beta - params.epsilon), terms)
            }
            Branch::Even => (
                params.lambda,
                Terms::General { first: SumRatio::new(-k, k, x), second: SumRatio::new(-k, k - 1, x) },
            ),
            Branch::Odd => (
                params.delta,
                Terms::General { first: SumRatio::new(-k, k, x), second: SumRatio::new(-k - 1, k, x) },
            ),
        };
        DualWindow { lattice: *lat, params, c, terms }
    }

    pub fn params(&self) -> &DualWindowParams {
        &self.params
    }

    pub fn lattice(&self) -> &GaborLattice {
        &self.lattice
    }

    /// `gamma(t) * pi (t + i w)`, entire in `t`; vanishes at `t = -i w`.
    pub fn numerator(&self, t: Complex64) -> Complex64 {
        let lat = &self.lattice;
        let beta = lat.beta();
        let w = lat.w();
        let zeta = t + Complex64::new(0.0, w);
        let outer = sin_complex(zeta * (PI / lat.alpha())) * (lat.alpha() / PI);
        let first_sine = sin_complex(zeta * (2.0 * PI * self.c));
        let second_sine = sin_complex(zeta * (PI * (beta - 2.0 * self.c)));
        let inner = match self.terms {
            Terms::Half { mid_minus, mid_plus } => {
                // e^{-i pi beta zeta}/(1 + e^{4 pi w beta}) + e^{i pi beta zeta}/(1 + e^{-4 pi w beta})
                let e = (Complex64::i() * PI * beta * zeta).exp();
                let mid = e.inv() * mid_minus + e * mid_plus;
                first_sine + mid * second_sine
            }
            Terms::General { first, second } => {
                let x = 2.0 * PI * beta * w;
                let z = Complex64::new(0.0, 2.0 * PI * beta) * (t - Complex64::new(0.0, w));
                let phase = (Complex64::i() * PI * beta * zeta).exp();
                first.eval(z, x) * first_sine + second.eval(z, x) * phase * second_sine
            }
        };
        outer * inner
    }

    pub fn eval(&self, t: f64) -> ComplexValue {
        self.eval_complex(Complex64::new(t, 0.0))
    }

    /// `gamma` at a complex point away from `t = -i w`.
    pub fn eval_complex(&self, t: Complex64) -> ComplexValue {
        let zeta = t + Complex64::new(0.0, self.lattice.w());
        self.numerator(t) / (zeta * PI)
    }
}

pub fn dual_window(t: f64, lat: &GaborLattice) -> ComplexValue {
    DualWindow::new(lat).eval(t)
}
