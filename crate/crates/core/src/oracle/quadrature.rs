//! Inner products against the Gabor atoms by quadrature on a uniform grid, and the truncated
//! analysis/synthesis sums built from them.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::closed_form::DualWindow;
use crate::error::{GaborError, Result};
use crate::lattice::{cauchy, tf_shift_eval, ComplexValue, GaborLattice, LatticeIndex};
use crate::signal::SampledSignal;
use crate::special::cis;

/// Edge magnitude (relative to the peak) above which a grid is reported as truncating `f`.
pub const COVERAGE_WARNING: f64 = 1e-6;

fn coverage_warning(f: &SampledSignal) -> Option<String> {
    let edge = f.edge_fraction();
    (edge > COVERAGE_WARNING)
        .then(|| format!("signal is {edge:.2e} of its peak at the grid edge; quadrature is truncated"))
}

/// `int f(t) conj(g_{m,n}(t)) dt` by the rectangle rule on the sample grid.
pub fn quadrature_inner_product(f: &SampledSignal, idx: LatticeIndex, lat: &GaborLattice) -> ComplexValue {
    f.values
        .iter()
        .enumerate()
        .map(|(l, v)| v * tf_shift_eval(f.time(l), idx, lat).conj())
        .sum::<Complex64>()
        * f.dt
}

/// Raw inner products `c[m][n] = <f, g_{m,n}>` for `|m| <= M`, `|n| <= N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameCoefficientTable {
    pub m_radius: usize,
    pub n_radius: usize,
    /// Row-major in `m`, each row holding `n = -N..=N`.
    pub coefficients: Vec<ComplexValue>,
    pub warning: Option<String>,
}

impl FrameCoefficientTable {
    pub fn get(&self, m: i64, n: i64) -> ComplexValue {
        let row = (m + self.m_radius as i64) as usize;
        let col = (n + self.n_radius as i64) as usize;
        self.coefficients[row * (2 * self.n_radius + 1) + col]
    }

    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }
}

enum Modulation {
    /// `e^{2 pi i beta n t_l}` repeats every `period` samples; sums fold onto one period.
    Folded { period: usize, forward: Arc<dyn Fft<f64>>, inverse: Arc<dyn Fft<f64>> },
    Direct { rows: Vec<Vec<Complex64>> },
}

/// Truncated system `{e^{2 pi i beta n t} v(t - alpha m)}` sampled on a fixed grid.
///
/// `analysis` and `synthesis` are the two halves of every truncated frame sum. When
/// `1/(beta dt)` is an integer the modulations are periodic on the grid and each time shift costs
/// one short FFT instead of `2N + 1` dot products.
pub struct TruncatedSystem<W> {
    lattice: GaborLattice,
    t0: f64,
    dt: f64,
    len: usize,
    m_radius: usize,
    n_radius: usize,
    window: W,
    /// When `alpha/dt` is an integer `q`, the window sampled once on the grid extended by `M q`
    /// samples on both sides; the shift by `alpha m` is then a slice.
    extended: Option<(usize, Vec<Complex64>)>,
    modulation: Modulation,
}

impl<W: Fn(f64) -> Complex64> TruncatedSystem<W> {
    pub fn new(
        lat: &GaborLattice,
        t0: f64,
        dt: f64,
        len: usize,
        m_radius: usize,
        n_radius: usize,
        window: W,
    ) -> Self {
        let step = 1.0 / (lat.beta() * dt);
        let period = step.round();
        let modulation = if period >= 1.0 && (step - period).abs() <= 1e-9 * step && (period as usize) <= len {
            let period = period as usize;
            let mut planner = FftPlanner::<f64>::new();
            Modulation::Folded {
                period,
                forward: planner.plan_fft_forward(period),
                inverse: planner.plan_fft_inverse(period),
            }
        } else {
            let n = n_radius as i64;
            let rows = (-n..=n)
                .map(|k| (0..len).map(|l| cis(2.0 * PI * lat.beta() * k as f64 * (t0 + dt * l as f64))).collect())
                .collect();
            Modulation::Direct { rows }
        };
        let ratio = lat.alpha() / dt;
        let q = ratio.round();
        let extended = (q >= 1.0 && (ratio - q).abs() <= 1e-9 * ratio).then(|| {
            let q = q as usize;
            let offset = m_radius * q;
            let samples = (0..len + 2 * offset)
                .map(|j| window(t0 + dt * (j as f64 - offset as f64)))
                .collect();
            (q, samples)
        });
        TruncatedSystem { lattice: *lat, t0, dt, len, m_radius, n_radius, window, extended, modulation }
    }

    pub fn for_signal(lat: &GaborLattice, f: &SampledSignal, m_radius: usize, n_radius: usize, window: W) -> Self {
        Self::new(lat, f.t0, f.dt, f.len(), m_radius, n_radius, window)
    }

    fn time(&self, l: usize) -> f64 {
        self.t0 + self.dt * l as f64
    }

    fn shifted_window(&self, m: i64) -> std::borrow::Cow<'_, [Complex64]> {
        if let Some((q, samples)) = &self.extended {
            let start = (self.m_radius as i64 - m) as usize * q;
            return std::borrow::Cow::Borrowed(&samples[start..start + self.len]);
        }
        let shift = self.lattice.alpha() * m as f64;
        std::borrow::Cow::Owned((0..self.len).map(|l| (self.window)(self.time(l) - shift)).collect())
    }

    fn cols(&self) -> usize {
        2 * self.n_radius + 1
    }

    /// `dt sum_l f(t_l) conj(e^{2 pi i beta n t_l} v(t_l - alpha m))`, row-major in `m`.
    pub fn analysis(&self, f: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(f.len(), self.len);
        let cols = self.cols();
        let nr = self.n_radius as i64;
        let mut out = vec![Complex64::new(0.0, 0.0); (2 * self.m_radius + 1) * cols];
        let mr = self.m_radius as i64;
        let mut product = vec![Complex64::new(0.0, 0.0); self.len];
        for (row, m) in (-mr..=mr).enumerate() {
            let win = self.shifted_window(m);
            for (p, (a, b)) in product.iter_mut().zip(f.iter().zip(win.iter())) {
                *p = a * b.conj();
            }
            let dest = &mut out[row * cols..(row + 1) * cols];
            match &self.modulation {
                Modulation::Folded { period, forward, .. } => {
                    let mut fold = vec![Complex64::new(0.0, 0.0); *period];
                    for chunk in product.chunks(*period) {
                        for (f, p) in fold.iter_mut().zip(chunk) {
                            *f += p;
                        }
                    }
                    forward.process(&mut fold);
                    for (c, n) in dest.iter_mut().zip(-nr..=nr) {
                        let bin = n.rem_euclid(*period as i64) as usize;
                        *c = fold[bin] * cis(-2.0 * PI * self.lattice.beta() * n as f64 * self.t0) * self.dt;
                    }
                }
                Modulation::Direct { rows } => {
                    for (c, e) in dest.iter_mut().zip(rows) {
                        *c = product.iter().zip(e).map(|(p, e)| p * e.conj()).sum::<Complex64>() * self.dt;
                    }
                }
            }
        }
        out
    }

    /// `sum_{m,n} c[m][n] e^{2 pi i beta n t_l} v(t_l - alpha m)`.
    pub fn synthesis(&self, coefficients: &[Complex64]) -> Vec<Complex64> {
        let cols = self.cols();
        assert_eq!(coefficients.len(), (2 * self.m_radius + 1) * cols);
        let nr = self.n_radius as i64;
        let mr = self.m_radius as i64;
        let mut out = vec![Complex64::new(0.0, 0.0); self.len];
        let mut series = vec![Complex64::new(0.0, 0.0); self.len];
        for (row, m) in (-mr..=mr).enumerate() {
            let src = &coefficients[row * cols..(row + 1) * cols];
            if src.iter().all(|c| c.norm_sqr() == 0.0) {
                continue;
            }
            match &self.modulation {
                Modulation::Folded { period, inverse, .. } => {
                    let mut bins = vec![Complex64::new(0.0, 0.0); *period];
                    for (c, n) in src.iter().zip(-nr..=nr) {
                        let bin = n.rem_euclid(*period as i64) as usize;
                        bins[bin] += c * cis(2.0 * PI * self.lattice.beta() * n as f64 * self.t0);
                    }
                    inverse.process(&mut bins);
                    for chunk in series.chunks_mut(*period) {
                        let n = chunk.len();
                        chunk.copy_from_slice(&bins[..n]);
                    }
                }
                Modulation::Direct { rows } => {
                    series.iter_mut().for_each(|s| *s = Complex64::new(0.0, 0.0));
                    for (c, e) in src.iter().zip(rows) {
                        for (s, e) in series.iter_mut().zip(e) {
                            *s += c * e;
                        }
                    }
                }
            }
            let win = self.shifted_window(m);
            for (o, (s, v)) in out.iter_mut().zip(series.iter().zip(win.iter())) {
                *o += s * v;
            }
        }
        out
    }
}

fn check_radii(m_radius: usize, n_radius: usize) -> Result<()> {
    if m_radius == 0 || n_radius == 0 {
        return Err(GaborError::param("truncation radii must be positive"));
    }
    Ok(())
}

fn cauchy_window(lat: &GaborLattice) -> impl Fn(f64) -> Complex64 {
    let w = lat.w();
    move |t| cauchy(t, w)
}

pub fn frame_coefficients(
    f: &SampledSignal,
    lat: &GaborLattice,
    m_radius: usize,
    n_radius: usize,
) -> Result<FrameCoefficientTable> {
    check_radii(m_radius, n_radius)?;
    let sys = TruncatedSystem::for_signal(lat, f, m_radius, n_radius, cauchy_window(lat));
    Ok(FrameCoefficientTable {
        m_radius,
        n_radius,
        coefficients: sys.analysis(&f.values),
        warning: coverage_warning(f),
    })
}

/// `sum_{|m| <= M, |n| <= N} <f, g_{m,n}> g_{m,n}` on the grid of `f`.
pub fn discrete_frame_operator(
    f: &SampledSignal,
    lat: &GaborLattice,
    m_radius: usize,
    n_radius: usize,
) -> Result<SampledSignal> {
    check_radii(m_radius, n_radius)?;
    let sys = TruncatedSystem::for_signal(lat, f, m_radius, n_radius, cauchy_window(lat));
    let values = sys.synthesis(&sys.analysis(&f.values));
    Ok(SampledSignal { t0: f.t0, dt: f.dt, values })
}

/// `sum <f, g_{m,n}> gamma_{m,n}` with the closed-form dual window.
pub fn reconstruct(f: &SampledSignal, lat: &GaborLattice, m_radius: usize, n_radius: usize) -> Result<SampledSignal> {
    check_radii(m_radius, n_radius)?;
    let dual = DualWindow::new(lat);
    let analysis = TruncatedSystem::for_signal(lat, f, m_radius, n_radius, cauchy_window(lat));
    let synthesis = TruncatedSystem::for_signal(lat, f, m_radius, n_radius, |t| dual.eval(t));
    let values = synthesis.synthesis(&analysis.analysis(&f.values));
    Ok(SampledSignal { t0: f.t0, dt: f.dt, values })
}

/// `sum <f, gamma_{m,n}> g_{m,n}`, the other ordering of the reconstruction formula.
pub fn reconstruct_dual(
    f: &SampledSignal,
    lat: &GaborLattice,
    m_radius: usize,
    n_radius: usize,
) -> Result<SampledSignal> {
    check_radii(m_radius, n_radius)?;
    let dual = DualWindow::new(lat);
    let analysis = TruncatedSystem::for_signal(lat, f, m_radius, n_radius, |t| dual.eval(t));
    let synthesis = TruncatedSystem::for_signal(lat, f, m_radius, n_radius, cauchy_window(lat));
    let values = synthesis.synthesis(&analysis.analysis(&f.values));
    Ok(SampledSignal { t0: f.t0, dt: f.dt, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat() -> GaborLattice {
        GaborLattice::new(1.0, 0.7, 0.2).unwrap()
    }

    #[test]
    fn atom_norm() {
        let l = lat();
        let idx = LatticeIndex::new(2, -3);
        let f = SampledSignal::centered(20_000.0, 1 << 21, |t| tf_shift_eval(t, idx, &l));
        let v = quadrature_inner_product(&f, idx, &l);
        // Tails beyond |t| = 10^4 carry 2/(w 10^4) of the mass.
        let tail = 2.0 / 1e4;
        assert!((v.re - PI / l.w()).abs() < 1.1 * tail);
        assert!(v.im.abs() < 1e-9);
    }

    #[test]
    fn riemann_lebesgue_decay() {
        let l = lat();
        let mut prev = f64::INFINITY;
        for k in [1.0, 2.0, 4.0, 8.0] {
            let f = SampledSignal::desk(|t| cauchy(t, l.w()) * cis(2.0 * PI * k * t));
            let v = quadrature_inner_product(&f, LatticeIndex::new(0, 0), &l).norm();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn folded_and_direct_paths_agree() {
        let l = GaborLattice::new(1.0, 0.5, 0.15).unwrap();
        let f = SampledSignal::centered(32.0, 1024, |t| Complex64::new((-t * t / 4.0).exp(), 0.3 * t.sin()));
        let folded = TruncatedSystem::for_signal(&l, &f, 12, 7, cauchy_window(&l));
        assert!(matches!(folded.modulation, Modulation::Folded { period: 64, .. }));
        let direct = {
            let mut s = TruncatedSystem::for_signal(&l, &f, 12, 7, cauchy_window(&l));
            let rows = (-7i64..=7)
                .map(|k| f.times().map(|t| cis(2.0 * PI * 0.5 * k as f64 * t)).collect())
                .collect();
            s.modulation = Modulation::Direct { rows };
            s
        };
        let a = folded.analysis(&f.values);
        let b = direct.analysis(&f.values);
        let scale = b.iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-12 * scale));
        let sa = folded.synthesis(&a);
        let sb = direct.synthesis(&b);
        let scale = sb.iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(sa.iter().zip(&sb).all(|(x, y)| (x - y).norm() < 1e-12 * scale));
        let single = quadrature_inner_product(&f, LatticeIndex::new(-3, 5), &l);
        assert!((a[9 * 15 + 12] - single).norm() < 1e-12 * scale);
    }

    #[test]
    fn zero_signal() {
        let f = SampledSignal::centered(16.0, 512, |_| Complex64::new(0.0, 0.0));
        let t = frame_coefficients(&f, &lat(), 4, 4).unwrap();
        assert_eq!(t.energy(), 0.0);
        assert!(t.warning.is_none());
        let r = reconstruct(&f, &lat(), 4, 4).unwrap();
        assert!(r.values.iter().all(|v| v.norm() == 0.0));
        assert!(frame_coefficients(&f, &lat(), 0, 4).is_err());
    }

    #[test]
    fn truncation_warning() {
        let l = lat();
        let f = SampledSignal::centered(8.0, 512, |t| cauchy(t, l.w()));
        assert!(frame_coefficients(&f, &l, 2, 2).unwrap().warning.is_some());
    }

    #[test]
    fn operator_is_linear_and_hermitian() {
        let l = lat();
        let f = SampledSignal::centered(16.0, 1024, |t| Complex64::new((-t * t).exp(), 0.0));
        let g = SampledSignal::centered(16.0, 1024, |t| cis(0.8 * t) * (-(t - 1.0).powi(2)).exp());
        let sf = discrete_frame_operator(&f, &l, 10, 10).unwrap();
        let sg = discrete_frame_operator(&g, &l, 10, 10).unwrap();
        let mut combo = f.clone();
        combo.scale(Complex64::new(0.5, -2.0));
        combo.axpy(Complex64::new(3.0, 1.0), &g);
        let s_combo = discrete_frame_operator(&combo, &l, 10, 10).unwrap();
        let mut expect = sf.clone();
        expect.scale(Complex64::new(0.5, -2.0));
        expect.axpy(Complex64::new(3.0, 1.0), &sg);
        assert!(s_combo.relative_error(&expect) < 1e-12);
        let lhs = sf.inner(&g);
        let rhs = f.inner(&sg);
        assert!((lhs - rhs).norm() < 1e-8 * lhs.norm());
    }
}
