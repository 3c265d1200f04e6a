//! Explicit formulas: Zak transform, frame bounds, the multiplier, the dual window and the
//! frame operator.

pub mod bounds;
pub mod dual;
pub mod multiplier;
pub mod operator;
pub mod zak;

pub use bounds::{
    corollary_bounds, critical_frame_bounds, frame_bound_estimates, toeplitz_symbol,
    toeplitz_symbol_extrema, BoundsReport,
};
pub use dual::{dual_window, Branch, DualWindow, DualWindowParams};
pub use multiplier::{
    build_multiplier, dual_fourier_profile, h_hat, h_hat_extrema, MultiplierPiece, MultiplierProfile,
};
pub use operator::{
    frame_operator_apply, inverse_frame_operator_apply, Boundary, FrameOperator, PreparedSandwich,
};
pub use zak::{zak_cauchy, zak_partial_sum};
