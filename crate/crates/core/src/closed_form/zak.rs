//! The Zak transform `Z_alpha g(t, omega) = sum_k g(t - alpha k) e^{2 pi i alpha k omega}` of the
//! Cauchy window, in closed form.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::lattice::{cauchy, ComplexValue, GaborLattice};
use crate::special::{cis, expm1_complex};

/// Closed-form Zak transform of `1/(t - i w)` with period `1/alpha` in `omega`.
///
/// The printed closed form holds for `omega` in `[0, 1/alpha)`; other frequencies are reduced
/// into that cell first, which makes the result exactly `1/alpha`-periodic in `omega`.
pub fn zak_cauchy(t: f64, omega: f64, lat: &GaborLattice) -> ComplexValue {
    let alpha = lat.alpha();
    let w = lat.w();
    let period = 1.0 / alpha;
    let mut om = omega - (omega * alpha).floor() * period;
    if om >= period {
        om -= period;
    }
    if om < 0.0 {
        om = 0.0;
    }
    // 1 - e^{2 pi (w + i t)/alpha} = -e^{q} (1 - e^{-q}) with q = 2 pi (w + i t)/alpha.
    let q = Complex64::new(2.0 * PI * w / alpha, 2.0 * PI * t / alpha);
    let denom = -expm1_complex(-q);
    // (-2 pi i / alpha) e^{2 pi i t om} e^{2 pi om w} / (-e^q (1 - e^{-q}))
    let phase = cis(2.0 * PI * t * om - 2.0 * PI * t / alpha);
    let mag = (2.0 * PI * w * (om - period)).exp();
    Complex64::new(0.0, 2.0 * PI / alpha) * phase * mag / denom
}

/// Symmetric partial sum `sum_{|k| <= K} g(t - alpha k) e^{2 pi i alpha k omega}`.
///
/// The series converges only conditionally; the symmetric truncation has an `O(1/K)` tail.
pub fn zak_partial_sum(t: f64, omega: f64, lat: &GaborLattice, terms: u32) -> ComplexValue {
    let alpha = lat.alpha();
    let mut acc = cauchy(t, lat.w());
    for k in 1..=terms as i64 {
        let kf = k as f64;
        let e = cis(2.0 * PI * alpha * kf * omega);
        acc += cauchy(t - alpha * kf, lat.w()) * e + cauchy(t + alpha * kf, lat.w()) * e.conj();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(alpha: f64, w: f64) -> GaborLattice {
        GaborLattice::new(alpha, 1.0 / alpha, w).unwrap()
    }

    #[test]
    fn midpoint_value() {
        let l = lat(1.3, 0.15);
        let y = (2.0 * PI * 0.15 / 1.3).exp();
        let expect = Complex64::new(0.0, -2.0 * PI / 1.3) / (1.0 + y);
        let z = zak_cauchy(0.65, 0.0, &l);
        assert!((z - expect).norm() <= 1e-14 * expect.norm());
    }

    #[test]
    fn agrees_with_partial_sums() {
        let l = lat(1.0, 0.1);
        for &(t, om) in &[(0.3, 0.2), (-1.7, 0.55), (0.05, 0.9)] {
            let a = zak_cauchy(t, om, &l);
            let b = zak_partial_sum(t, om, &l, 20_000);
            assert!((a - b).norm() <= 1e-3 * a.norm(), "{t} {om}: {a} vs {b}");
        }
    }

    proptest! {
        #[test]
        fn quasi_periodic(t in -5f64..5.0, om in -3f64..3.0, alpha in 0.3f64..3.0, w in 0.02f64..0.5) {
            let l = lat(alpha, w);
            let z = zak_cauchy(t, om, &l);
            let shifted = zak_cauchy(t + alpha, om, &l);
            let expect = z * cis(2.0 * PI * alpha * om);
            prop_assert!((shifted - expect).norm() <= 1e-12 * z.norm());
        }
    }
}
