//! Frame coefficients of band-limited signals by residues.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{GaborError, Result};
use crate::lattice::{ComplexValue, GaborLattice, LatticeIndex};
use crate::special::cis;

/// `<f_k, g_{m,n}>` for `f_k = e^{2 pi i k t} h_k(t)` with `h_k` spectrally supported in `[0, 1]`.
///
/// Closing the contour in the lower half plane picks up the pole at `alpha m - i w`:
/// `<f_k, g_{m,n}> = -2 pi i e^{-2 pi i n alpha m} h_k(alpha m - i w) e^{2 pi i k alpha m} e^{2 pi w (k - n)}`
/// when `k < n`, and `0` when `k >= n`. Requires `beta = 1`.
pub fn residue_coefficient(
    h_k: impl Fn(Complex64) -> Complex64,
    k: i64,
    idx: LatticeIndex,
    lat: &GaborLattice,
) -> Result<ComplexValue> {
    if (lat.beta() - 1.0).abs() > 1e-12 {
        return Err(GaborError::param(format!("residue formula needs beta = 1, got {}", lat.beta())));
    }
    if k >= idx.n {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let am = lat.alpha() * idx.m as f64;
    let h = h_k(Complex64::new(am, -lat.w()));
    let phase = cis(2.0 * PI * am * (k - idx.n) as f64);
    let decay = (2.0 * PI * lat.w() * (k - idx.n) as f64).exp();
    Ok(Complex64::new(0.0, -2.0 * PI) * phase * h * decay)
}
