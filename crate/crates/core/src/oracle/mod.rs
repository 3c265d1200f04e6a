//! Brute-force numerical counterparts of the closed forms.

pub mod dual_oracle;
mod gauss;
pub mod pw;
pub mod quadrature;
pub mod report;
pub mod residue;
pub mod spectral;

pub use quadrature::{
    discrete_frame_operator, frame_coefficients, quadrature_inner_product, reconstruct, reconstruct_dual,
    FrameCoefficientTable, TruncatedSystem,
};
pub use pw::{pw_test_signal, PwTestSignal, SpectralBump};
pub use dual_oracle::{dual_window_oracle, dual_window_oracle_sampled, DualWindowOracle};
pub use report::{verify, Check, ParamValue, Tolerances, VerificationReport, VerifyConfig, CHECK_NAMES};
pub use residue::residue_coefficient;
pub use spectral::{
    empirical_frame_bounds, empirical_frame_bounds_with, power_iteration, EmpiricalBounds, EmpiricalBoundsConfig,
    PowerIteration,
};
