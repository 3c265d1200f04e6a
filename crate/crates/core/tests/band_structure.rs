use cauchy_gabor::oracle::{frame_coefficients, quadrature_inner_product, residue_coefficient, PwTestSignal};
use cauchy_gabor::{DualWindow, GaborLattice, LatticeIndex, SampledSignal};
use num_complex::Complex64;
use std::f64::consts::PI;

fn unit_lattice() -> GaborLattice {
    GaborLattice::new(0.5, 1.0, 0.2).unwrap()
}

/// Band-limited signal on a grid long enough that truncation is below 1e-11.
fn sampled(s: &PwTestSignal) -> SampledSignal {
    s.sample(-64.0, 1.0 / 64.0, 128 * 64)
}

#[test]
fn residue_matches_quadrature_for_first_example() {
    let lat = unit_lattice();
    let s = PwTestSignal::new(0, 5);
    let f = sampled(&s);
    let idx = LatticeIndex::new(1, 2);
    let quad = quadrature_inner_product(&f, idx, &lat);
    let res = residue_coefficient(|z| s.h(z), 0, idx, &lat).unwrap();
    assert!((quad - res).norm() <= 1e-8 * f.norm(), "{quad} {res}");
}

#[test]
fn adjacent_band_at_origin() {
    let lat = unit_lattice();
    let s = PwTestSignal::new(1, 8);
    let f = sampled(&s);
    let idx = LatticeIndex::new(0, 2);
    let expect = Complex64::new(0.0, -2.0 * PI) * s.h(Complex64::new(0.0, -0.2)) * (-2.0 * PI * 0.2f64).exp();
    let quad = quadrature_inner_product(&f, idx, &lat);
    assert!((quad - expect).norm() <= 1e-8 * f.norm(), "{quad} {expect}");
}

#[test]
fn lattice_sampling_identity() {
    let w = 0.15;
    for (alpha, seed) in [(1.0, 1), (0.5, 2), (0.8, 3)] {
        let s = PwTestSignal::new(0, seed);
        let g = |t: f64| s.h(Complex64::new(t, -w));
        let dt = 1.0 / 64.0;
        let norm: f64 = (-8192..=8192).map(|l| g(dt * l as f64).norm_sqr()).sum::<f64>() * dt;
        let reach = (128.0 / alpha) as i64;
        let lattice_sum: f64 = (-reach..=reach).map(|m| g(alpha * m as f64).norm_sqr()).sum::<f64>() * alpha;
        assert!((norm - lattice_sum).abs() <= 1e-8 * norm, "alpha {alpha}: {norm} {lattice_sum}");
    }
}

#[test]
fn coefficient_decay_rate_in_n() {
    let lat = unit_lattice();
    let w = lat.w();
    for (band, seed) in [(0i64, 11u64), (-1, 12)] {
        let f = sampled(&PwTestSignal::new(band, seed));
        let table = frame_coefficients(&f, &lat, 2, 8).unwrap();
        for m in -2..=2 {
            let points: Vec<(f64, f64)> =
                ((band + 1)..=(band + 6)).map(|n| (n as f64, table.get(m, n).norm().ln())).collect();
            let k = points.len() as f64;
            let mean_x = points.iter().map(|p| p.0).sum::<f64>() / k;
            let mean_y = points.iter().map(|p| p.1).sum::<f64>() / k;
            let slope = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum::<f64>()
                / points.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
            assert!((slope + 2.0 * PI * w).abs() <= 1e-6, "band {band} m {m}: slope {slope}");
            for n in (band - 3)..=band {
                assert!(table.get(m, n).norm() <= 1e-8 * f.norm());
            }
        }
    }
}

#[test]
fn biorthogonal_at_critical_density() {
    let lat = GaborLattice::new(1.0, 1.0, 0.1).unwrap();
    let dual = DualWindow::new(&lat);
    let half = 2.0e5;
    let dt = 1.0 / 16.0;
    let k = (half / dt) as usize;
    let gamma = SampledSignal::from_fn(-(k as f64) * dt, dt, 2 * k + 1, |t| dual.eval(t));
    let table = frame_coefficients(&gamma, &lat, 3, 3).unwrap();
    let mut worst = 0.0f64;
    for m in -3..=3 {
        for n in -3..=3 {
            let expect = if (m, n) == (0, 0) { 1.0 } else { 0.0 };
            worst = worst.max((table.get(m, n) - expect).norm());
        }
    }
    assert!(worst <= 1e-6, "{worst}");
}
