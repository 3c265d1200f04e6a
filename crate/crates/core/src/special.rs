//! Small complex helpers that stay accurate where the textbook formulas cancel.

use num_complex::Complex64;

/// `sin(x + iy) = sin x cosh y + i cos x sinh y`.
#[inline]
pub fn sin_complex(z: Complex64) -> Complex64 {
    let (s, c) = z.re.sin_cos();
    Complex64::new(s * z.im.cosh(), c * z.im.sinh())
}

/// `exp(z) - 1` without cancellation for small `|z|`.
#[inline]
pub fn expm1_complex(z: Complex64) -> Complex64 {
    let (sb, cb) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    let em1 = z.re.exp_m1();
    Complex64::new(em1 * cb - 2.0 * half * half, z.re.exp() * sb)
}

#[inline]
pub fn cis(theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// `sum_{m=lo}^{hi} e^{m z}` scaled by `e^{-hi z}`, i.e. `sum_{j=0}^{hi-lo} e^{-j z}`.
///
/// Assumes `Re z > 0` or small `|z|`; the closed form is used away from `z = 0`.
pub fn geometric_tail(z: Complex64, count: u32) -> Complex64 {
    debug_assert!(count > 0);
    if count == 1 {
        return Complex64::new(1.0, 0.0);
    }
    if z.norm() < 1e-8 {
        let n = count as f64;
        return Complex64::new(n, 0.0) - z * (n * (n - 1.0) / 2.0);
    }
    let num = expm1_complex(-z * count as f64);
    let den = expm1_complex(-z);
    num / den
}
