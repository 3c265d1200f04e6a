use gauss_quad::legendre::GaussLegendre;
use std::num::NonZeroUsize;

/// Gauss-Legendre nodes and weights mapped to `[a, b]`.
pub(crate) fn gauss_legendre(a: f64, b: f64, degree: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(degree.max(1)).unwrap());
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    rule.as_node_weight_pairs().iter().map(|&(x, w)| (mid + half * x, half * w)).collect()
}
