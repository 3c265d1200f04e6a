//! Gabor frames generated by the Cauchy window `g(t) = 1/(t - i w)`.
//!
//! The crate evaluates the closed forms available for this window (Zak transform, frame-bound
//! estimates, the frame operator and its inverse, the canonical dual window for every density
//! `alpha beta <= 1`) and provides brute-force numerical counterparts in [`oracle`] to check them.

pub mod closed_form;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod signal;
pub mod special;

pub use closed_form::*;
pub use error::{GaborError, Result};
pub use lattice::{
    normalize_lattice, tf_shift_eval, window_eval, ComplexValue, GaborLattice, LatticeIndex,
};
pub use signal::{GridSpec, SampledSignal};
