//! Frame-bound formulas: the critical-density optimum, the general estimates, the Toeplitz
//! symbol behind them and the brackets obtained from the multiplier.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::multiplier::MultiplierProfile;
use crate::error::{GaborError, Result};
use crate::lattice::{ComplexValue, GaborLattice, EXPONENT_LIMIT};
use crate::special::cis;

/// `(4 pi^2 / alpha) / (e^y + 1)^2` and `(4 pi^2 / alpha) / (1 - e^{-y})^2`.
fn bound_pair(alpha: f64, y: f64) -> (f64, f64) {
    let c = 4.0 * PI * PI / alpha;
    let lower = c / (y.exp() + 1.0).powi(2);
    let upper = c / (-(-y).exp_m1()).powi(2);
    (lower, upper)
}

fn check_exponent(y: f64, scale: f64) -> Result<()> {
    if !(y.is_finite() && y <= EXPONENT_LIMIT) {
        return Err(GaborError::ExponentOverflow { exponent: y, scale, limit: EXPONENT_LIMIT });
    }
    Ok(())
}

/// Optimal frame bounds on the critical hyperbola `beta = 1/alpha`.
pub fn critical_frame_bounds(alpha: f64, w: f64) -> Result<(f64, f64)> {
    if !(alpha.is_finite() && alpha > 0.0 && w.is_finite() && w > 0.0) {
        return Err(GaborError::param(format!("alpha and w must be positive, got {alpha}, {w}")));
    }
    let y = 2.0 * PI * w / alpha;
    check_exponent(y, 1.0 / alpha)?;
    Ok(bound_pair(alpha, y))
}

/// Lower and upper frame-bound estimates valid for every `alpha beta <= 1`.
pub fn frame_bound_estimates(lat: &GaborLattice) -> (f64, f64) {
    bound_pair(lat.alpha(), 2.0 * PI * lat.beta() * lat.w())
}

/// `s(theta) = e^{-2 pi i theta} / (e^{2 pi w} - e^{-2 pi i theta})`.
pub fn toeplitz_symbol(theta: f64, w: f64) -> Result<ComplexValue> {
    check_symbol_w(w)?;
    let e = cis(-2.0 * PI * theta);
    Ok(e / (Complex64::new((2.0 * PI * w).exp(), 0.0) - e))
}

/// `(min |s|, max |s|) = (1/(e^{2 pi w} + 1), 1/(e^{2 pi w} - 1))`.
pub fn toeplitz_symbol_extrema(w: f64) -> Result<(f64, f64)> {
    check_symbol_w(w)?;
    let y = 2.0 * PI * w;
    Ok((1.0 / (y.exp() + 1.0), 1.0 / y.exp_m1()))
}

fn check_symbol_w(w: f64) -> Result<()> {
    if !(w.is_finite() && w > 0.0) {
        return Err(GaborError::param(format!("w must be positive, got {w}")));
    }
    check_exponent(2.0 * PI * w, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    pub a_lower_thm1: f64,
    pub b_upper_thm1: f64,
    /// `(lower, upper)` bracket for the optimal lower bound `A`.
    pub a_bracket_cor: (f64, f64),
    /// `(lower, upper)` bracket for the optimal upper bound `B`.
    pub b_bracket_cor: (f64, f64),
    /// Exact optimal bounds, present only at critical density.
    pub critical_exact: Option<(f64, f64)>,
}

/// Brackets for `A` and `B` from the extrema of the multiplier, together with the general
/// estimates and, at `alpha beta = 1`, the exact values.
pub fn corollary_bounds(lat: &GaborLattice) -> Result<BoundsReport> {
    let profile = MultiplierProfile::new(lat);
    let (inf, sup) = profile.extrema();
    let alpha = lat.alpha();
    let half = PI * lat.w() / alpha;
    let plus = (2.0 * half.cosh()).powi(2);
    let minus = (2.0 * half.sinh()).powi(2);
    let c = 4.0 * PI / alpha;
    let (a_lower_thm1, b_upper_thm1) = frame_bound_estimates(lat);
    let critical_exact = if lat.is_critical() {
        Some(critical_frame_bounds(alpha, lat.w())?)
    } else {
        None
    };
    Ok(BoundsReport {
        a_lower_thm1,
        b_upper_thm1,
        a_bracket_cor: (c * inf / plus, c * inf / minus),
        b_bracket_cor: (c * sup / plus, c * sup / minus),
        critical_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const LN2_W: f64 = std::f64::consts::LN_2 / (2.0 * PI);

    #[test]
    fn critical_example() {
        let (a, b) = critical_frame_bounds(1.0, LN2_W).unwrap();
        assert_relative_eq!(a, 4.0 * PI * PI / 9.0, max_relative = 1e-14);
        assert_relative_eq!(b, 16.0 * PI * PI, max_relative = 1e-13);
        assert_relative_eq!(a, 4.386490844928604, max_relative = 1e-14);
        assert_relative_eq!(b, 157.91367041742973, max_relative = 1e-13);
    }

    #[test]
    fn estimates_example() {
        let lat = GaborLattice::new(0.5, 1.0, LN2_W).unwrap();
        let (a, b) = frame_bound_estimates(&lat);
        assert_relative_eq!(a, 8.0 * PI * PI / 9.0, max_relative = 1e-14);
        assert_relative_eq!(b, 32.0 * PI * PI, max_relative = 1e-13);
    }

    #[test]
    fn estimates_coincide_with_critical() {
        let lat = GaborLattice::new(1.0, 1.0, 0.1).unwrap();
        assert_eq!(frame_bound_estimates(&lat), critical_frame_bounds(1.0, 0.1).unwrap());
    }

    #[test]
    fn critical_bounds_decrease_in_w() {
        let mut prev = critical_frame_bounds(0.8, 0.01).unwrap();
        for i in 2..200 {
            let cur = critical_frame_bounds(0.8, 0.01 * i as f64).unwrap();
            assert!(cur.0 < prev.0 && cur.1 < prev.1);
            assert!(cur.0 < cur.1);
            prev = cur;
        }
    }

    #[test]
    fn symbol_extrema_example() {
        let (lo, hi) = toeplitz_symbol_extrema(LN2_W).unwrap();
        assert_relative_eq!(lo, 1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(hi, 1.0, max_relative = 1e-14);
        let s0 = toeplitz_symbol(0.0, LN2_W).unwrap();
        assert_relative_eq!(s0.re, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn symbol_grid_scan() {
        for &w in &[0.02, 0.1, LN2_W, 0.5] {
            let (lo, hi) = toeplitz_symbol_extrema(w).unwrap();
            let mods: Vec<f64> =
                (0..=1024).map(|j| toeplitz_symbol(j as f64 / 1024.0, w).unwrap().norm()).collect();
            let min = mods.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = mods.iter().cloned().fold(0.0, f64::max);
            assert!((min - lo).abs() <= 1e-4 * lo);
            assert!((max - hi).abs() <= 1e-4 * hi);
        }
    }

    #[test]
    fn corollary_at_critical_density() {
        let lat = GaborLattice::new(1.0, 1.0, 0.1).unwrap();
        let r = corollary_bounds(&lat).unwrap();
        let (a, b) = r.critical_exact.unwrap();
        assert_relative_eq!(r.a_bracket_cor.0, a, max_relative = 1e-12);
        assert_relative_eq!(r.b_bracket_cor.1, b, max_relative = 1e-12);
        assert_relative_eq!(r.a_lower_thm1, a, max_relative = 1e-15);
        assert_relative_eq!(r.b_upper_thm1, b, max_relative = 1e-15);
    }

    #[test]
    fn corollary_ordering() {
        let lat = GaborLattice::new(1.0, 0.7, 0.2).unwrap();
        let r = corollary_bounds(&lat).unwrap();
        assert!(r.a_bracket_cor.0 <= r.a_bracket_cor.1);
        assert!(r.b_bracket_cor.0 <= r.b_bracket_cor.1);
        assert!(r.a_lower_thm1 <= r.a_bracket_cor.1);
        assert!(r.critical_exact.is_none());
    }

    proptest! {
        #[test]
        fn estimates_scale_with_beta(
            alpha in 0.2f64..3.0, density in 0.1f64..1.0, w in 0.01f64..0.5,
        ) {
            let lat = GaborLattice::new(alpha, density / alpha, w).unwrap();
            let (norm, scale) = crate::lattice::normalize_lattice(&lat).unwrap();
            let (a, b) = frame_bound_estimates(&lat);
            let (an, bn) = frame_bound_estimates(&norm);
            prop_assert!((a - scale * an).abs() <= 1e-12 * a);
            prop_assert!((b - scale * bn).abs() <= 1e-12 * b);
        }
    }
}
