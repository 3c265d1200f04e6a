//! Lattice parameters, the Cauchy window and its time-frequency shifts.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{GaborError, Result};
use crate::special::cis;

pub type ComplexValue = Complex64;

/// Largest exponent `2*pi*w*scale` we are willing to feed to `exp`.
pub const EXPONENT_LIMIT: f64 = 700.0;

/// Tolerance used when deciding whether `1/(alpha*beta)` is an integer.
pub const DENSITY_SNAP: f64 = 1e-12;

/// Time-frequency lattice `alpha Z x beta Z` paired with the window parameter `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaborLattice {
    alpha: f64,
    beta: f64,
    w: f64,
}

impl GaborLattice {
    pub fn new(alpha: f64, beta: f64, w: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("w", w)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(GaborError::param(format!("{name} must be finite and positive, got {v}")));
            }
        }
        let density = alpha * beta;
        if density > 1.0 + DENSITY_SNAP {
            return Err(GaborError::param(format!(
                "alpha*beta = {density} > 1, the system is not a frame"
            )));
        }
        let lat = GaborLattice { alpha, beta, w };
        let scale = (1.0 / alpha).max(beta * lat.band_count_ceil() as f64);
        let exponent = 2.0 * PI * w * scale;
        if !(exponent <= EXPONENT_LIMIT) {
            return Err(GaborError::ExponentOverflow { exponent, scale, limit: EXPONENT_LIMIT });
        }
        Ok(lat)
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn w(&self) -> f64 {
        self.w
    }

    #[inline]
    pub fn density(&self) -> f64 {
        self.alpha * self.beta
    }

    pub fn is_critical(&self) -> bool {
        (self.density() - 1.0).abs() <= DENSITY_SNAP
    }

    /// Reciprocal density `1/(alpha beta)`, snapped to the nearest integer when within tolerance.
    pub fn inverse_density(&self) -> f64 {
        let r = 1.0 / self.density();
        let nearest = r.round();
        if (r - nearest).abs() <= DENSITY_SNAP * r.max(1.0) {
            nearest
        } else {
            r
        }
    }

    /// `n = floor(1/(alpha beta))`, the branch selector of the dual window.
    pub fn band_index(&self) -> u32 {
        self.inverse_density().floor() as u32
    }

    fn band_count_ceil(&self) -> u32 {
        self.inverse_density().ceil() as u32
    }

    /// Half-width `1/(2 alpha)` of the band carried by the dual window.
    #[inline]
    pub fn half_band(&self) -> f64 {
        0.5 / self.alpha
    }
}

/// Index `(m, n)` of the atom `g_{m,n}(t) = e^{2 pi i beta n t} g(t - alpha m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeIndex {
    pub m: i64,
    pub n: i64,
}

impl LatticeIndex {
    pub fn new(m: i64, n: i64) -> Self {
        LatticeIndex { m, n }
    }
}

/// `g(t) = 1/(t - i w)`.
pub fn window_eval(t: f64, w: f64) -> Result<ComplexValue> {
    if !t.is_finite() {
        return Err(GaborError::param(format!("t must be finite, got {t}")));
    }
    if !w.is_finite() || w <= 0.0 {
        return Err(GaborError::param(format!("w must be finite and positive, got {w}")));
    }
    Ok(cauchy(t, w))
}

#[inline]
pub(crate) fn cauchy(t: f64, w: f64) -> Complex64 {
    let d = t * t + w * w;
    Complex64::new(t / d, w / d)
}

/// `g_{m,n}(t) = e^{2 pi i beta n t} / (t - alpha m - i w)`.
#[inline]
pub fn tf_shift_eval(t: f64, idx: LatticeIndex, lat: &GaborLattice) -> ComplexValue {
    let x = t - lat.alpha * idx.m as f64;
    cis(2.0 * PI * lat.beta * idx.n as f64 * t) * cauchy(x, lat.w)
}

/// Rescale to `beta = 1`: returns the lattice `(alpha beta, 1, beta w)` and the factor `beta`.
///
/// The map `f(t) -> beta^{-1/2} f(t/beta)` sends the original system onto the returned one and
/// multiplies both frame bounds by `beta`.
pub fn normalize_lattice(lat: &GaborLattice) -> Result<(GaborLattice, f64)> {
    let normalized = GaborLattice::new(lat.density(), 1.0, lat.beta * lat.w)?;
    Ok((normalized, lat.beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn window_at_origin_and_one() {
        let g0 = window_eval(0.0, 1.0).unwrap();
        assert_abs_diff_eq!(g0.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g0.im, 1.0, epsilon = 1e-15);
        let g1 = window_eval(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(g1.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(g1.im, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn window_rejects_bad_input() {
        assert!(window_eval(0.0, 0.0).is_err());
        assert!(window_eval(0.0, -1.0).is_err());
        assert!(window_eval(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn shifted_atom_example() {
        let lat = GaborLattice::new(1.0, 0.5, 1.0).unwrap();
        let v = tf_shift_eval(1.0, LatticeIndex::new(1, 1), &lat);
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn normalization_example() {
        let lat = GaborLattice::new(0.5, 2.0, 1.0).unwrap();
        let (n, s) = normalize_lattice(&lat).unwrap();
        assert_eq!((n.alpha(), n.beta(), n.w(), s), (1.0, 1.0, 2.0, 2.0));
    }

    #[test]
    fn lattice_validation() {
        assert!(GaborLattice::new(1.0, 1.1, 0.1).is_err());
        assert!(GaborLattice::new(0.0, 1.0, 0.1).is_err());
        assert!(GaborLattice::new(1.0, 1.0, f64::INFINITY).is_err());
        assert!(matches!(
            GaborLattice::new(1.0, 1.0, 200.0),
            Err(GaborError::ExponentOverflow { .. })
        ));
        assert!(matches!(
            GaborLattice::new(0.01, 1.0, 1.2),
            Err(GaborError::ExponentOverflow { .. })
        ));
        assert!(GaborLattice::new(1.0, 1.0, 100.0).is_ok());
    }

    #[test]
    fn band_index_snaps() {
        let lat = GaborLattice::new(1.0 / 3.0, 1.0, 0.1).unwrap();
        assert_eq!(lat.band_index(), 3);
        let lat = GaborLattice::new(1.0, 0.45, 0.1).unwrap();
        assert_eq!(lat.band_index(), 2);
        assert!(GaborLattice::new(1.0, 1.0, 0.1).unwrap().is_critical());
    }

    proptest! {
        #[test]
        fn window_modulus(t in -1e3f64..1e3, w in 1e-3f64..1e2) {
            let g = window_eval(t, w).unwrap();
            let expect = 1.0 / (t * t + w * w).sqrt();
            prop_assert!((g.norm() - expect).abs() <= 1e-14 * expect);
        }

        #[test]
        fn atom_modulus_ignores_modulation(
            t in -50f64..50.0, m in -20i64..20, n in -20i64..20,
            alpha in 0.2f64..2.0, w in 0.05f64..1.0,
        ) {
            let lat = GaborLattice::new(alpha, 0.4 / alpha, w).unwrap();
            let a = tf_shift_eval(t, LatticeIndex::new(m, n), &lat).norm();
            let b = tf_shift_eval(t, LatticeIndex::new(m, 0), &lat).norm();
            prop_assert!((a - b).abs() <= 1e-13 * b);
        }

        #[test]
        fn normalization_preserves_invariants(
            alpha in 0.1f64..4.0, density in 0.05f64..1.0, w in 0.01f64..0.5,
        ) {
            let beta = density / alpha;
            let lat = GaborLattice::new(alpha, beta, w).unwrap();
            let (n, s) = normalize_lattice(&lat).unwrap();
            prop_assert_eq!(n.beta(), 1.0);
            prop_assert!((n.density() - lat.density()).abs() <= 1e-15);
            prop_assert!((n.w() - beta * w).abs() <= 1e-15 * n.w());
            prop_assert_eq!(s, beta);
        }
    }
}
