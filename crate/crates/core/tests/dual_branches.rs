use cauchy_gabor::oracle::DualWindowOracle;
use cauchy_gabor::{Branch, DualWindow, GaborLattice};
use num_complex::Complex64;
use proptest::prelude::*;

fn sup_relative(a: impl Fn(f64) -> Complex64, b: impl Fn(f64) -> Complex64, reach: f64) -> f64 {
    let (mut diff, mut peak) = (0.0f64, 0.0f64);
    for i in 0..=400 {
        let t = -reach + 2.0 * reach * i as f64 / 400.0;
        let y = b(t);
        diff = diff.max((a(t) - y).norm());
        peak = peak.max(y.norm());
    }
    diff / peak
}

#[test]
fn oracle_agreement_in_every_band() {
    for (beta, n, branch) in [
        (0.8, 1, Branch::Half),
        (0.6, 1, Branch::Half),
        (0.4, 2, Branch::Even),
        (0.3, 3, Branch::Odd),
        (0.23, 4, Branch::Even),
        (0.18, 5, Branch::Odd),
    ] {
        let lat = GaborLattice::new(1.0, beta, 0.12).unwrap();
        let dual = DualWindow::new(&lat);
        assert_eq!((dual.params().n, dual.params().branch), (n, branch));
        let oracle = DualWindowOracle::new(&lat, 12.0, 1.0);
        let err = sup_relative(|t| dual.eval(t), |t| oracle.eval(t), 12.0);
        assert!(err <= 1e-8, "beta {beta}: {err}");
    }
}

#[test]
fn larger_band_chosen_on_boundary() {
    let lat = GaborLattice::new(1.0, 0.25, 0.1).unwrap();
    assert_eq!(DualWindow::new(&lat).params().n, 4);
    assert!(DualWindow::for_band(&lat, 3).is_ok());
    assert!(DualWindow::for_band(&lat, 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjacent_branches_agree_on_boundary(n in 1u32..7, alpha in 0.3f64..3.0, w in 0.03f64..0.4, t in -15f64..15.0) {
        let beta = 1.0 / (alpha * (n + 1) as f64);
        let lat = GaborLattice::new(alpha, beta, w).unwrap();
        let lower = DualWindow::for_band(&lat, n).unwrap().eval(t);
        let upper = DualWindow::for_band(&lat, n + 1).unwrap().eval(t);
        prop_assert!((lower - upper).norm() <= 1e-10 * upper.norm().max(1e-3), "{lower} {upper}");
    }

    #[test]
    fn dual_scales_with_lattice(alpha in 0.4f64..2.5, ab in 0.15f64..1.0, w in 0.05f64..0.3, t in -5f64..5.0) {
        // gamma for (alpha, beta, w) at t equals gamma for (1, alpha beta, w/alpha) at t/alpha.
        let lat = GaborLattice::new(alpha, ab / alpha, w).unwrap();
        let unit = GaborLattice::new(1.0, ab, w / alpha).unwrap();
        let a = DualWindow::new(&lat).eval(t);
        let b = DualWindow::new(&unit).eval(t / alpha);
        prop_assert!((a - b).norm() <= 1e-10 * b.norm().max(1e-6), "{a} {b}");
    }
}
