//! Four-level double-dark-resonance medium: closed-form and numerically
//! solved linear susceptibility, Gaussian control images, split-step
//! probe/control propagation, beam metrics and preset scenarios.

// `!(x > 0.0)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod atomic;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod propagator;
pub mod scenario;

pub use analysis::{beam_metrics, integrated_transmission, BeamMetrics, Peak};
pub use atomic::{chi41, chi41_with_fallback, complex_rates, rho41_plus, zeroth_order_populations};
pub use atomic::{AtomicParams, ComplexRates, DriveConfig, Populations0, Susceptibility};
pub use error::{Error, Result};
pub use geometry::{classify_resolution, sample_control_profile, susceptibility_map};
pub use geometry::{ComplexField2D, ControlProfile, Cut, GaussianPeak, Resolution, ResolutionClass, TransverseGrid};
pub use oracle::{steady_state_oracle, DensityMatrix};
pub use propagator::{
    diffraction_step, medium_step, propagate, Boundary, PropagationConfig, PropagationRecord, Scheme,
};

pub use num_complex::Complex64;
