use cauchy_gabor::oracle::report::test_signals;
use cauchy_gabor::oracle::{empirical_frame_bounds_with, frame_coefficients, EmpiricalBoundsConfig, PwTestSignal};
use cauchy_gabor::{corollary_bounds, frame_bound_estimates, Boundary, FrameOperator, GaborLattice};

fn desk_lattice() -> GaborLattice {
    GaborLattice::new(1.0, 0.7, 0.2).unwrap()
}

#[test]
fn frame_inequality_witness() {
    let lat = desk_lattice();
    let (a, b) = frame_bound_estimates(&lat);
    for s in test_signals(&lat, 3, 7) {
        let f = s.sample_desk();
        let energy = frame_coefficients(&f, &lat, 40, 40).unwrap().energy();
        let norm = f.norm_sqr();
        assert!(a * norm <= energy * (1.0 + 1e-6), "{} > {energy}", a * norm);
        assert!(energy <= b * norm * (1.0 + 1e-6), "{energy} > {}", b * norm);
    }
}

#[test]
fn coefficient_energy_converges_in_truncation() {
    let lat = desk_lattice();
    let f = PwTestSignal::for_lattice(0, 3, &lat).sample_desk();
    let coarse = frame_coefficients(&f, &lat, 25, 25).unwrap().energy();
    let fine = frame_coefficients(&f, &lat, 50, 50).unwrap().energy();
    assert!((fine - coarse).abs() <= 1e-4 * fine, "{coarse} {fine}");
}

#[test]
fn closed_form_operator_is_positive() {
    let lat = desk_lattice();
    let (a, _) = frame_bound_estimates(&lat);
    let op = FrameOperator::new(&lat);
    for s in test_signals(&lat, 3, 1) {
        let f = s.sample_desk();
        let q = op.apply(&f).unwrap().inner(&f);
        assert!(q.im.abs() <= 1e-10 * q.re, "{q}");
        assert!(q.re >= a * f.norm_sqr() * (1.0 - 1e-6));
    }
}

#[test]
fn inverse_undoes_forward_on_band_limited_signal() {
    let lat = desk_lattice();
    let op = FrameOperator::new(&lat).with_boundary(Boundary::Periodic);
    let f = PwTestSignal::new(1, 2).sample_desk();
    let back = op.apply_inverse(&op.apply(&f).unwrap()).unwrap();
    assert!(back.relative_error(&f) <= 1e-9);
}

#[test]
fn empirical_lower_bound_inside_corollary_bracket() {
    for (alpha, beta, w) in [(1.0, 0.7, 0.2), (1.0, 0.45, 0.1)] {
        let lat = GaborLattice::new(alpha, beta, w).unwrap();
        let bracket = corollary_bounds(&lat).unwrap().a_bracket_cor;
        let emp = empirical_frame_bounds_with(&lat, &EmpiricalBoundsConfig::for_lattice(&lat, 4)).unwrap();
        let tol = 0.02 * bracket.1;
        assert!(emp.a_emp >= bracket.0 - tol && emp.a_emp <= bracket.1 + tol, "{} not in {bracket:?}", emp.a_emp);
    }
}
