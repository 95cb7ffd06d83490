//! Floating-point quadrature checks, independent of the exact pipeline.
//!
//! Differentiation on the torus is spectral, so it is exact up to rounding on
//! trigonometric polynomials; only the variation parameters are differenced.

pub mod bienergy;
pub mod conformal;
pub mod fd;
pub mod grid;
pub mod hessian;
pub mod variation;

pub use bienergy::{bienergy, bienergy_with, tension, tension_norm_sq, DomainMetric};
pub use conformal::{conformal_rayleigh, joint_gram, w_sections, JointGram, Rayleigh};
pub use fd::{derivative, mixed_derivative, FdEstimate, DEFAULT_STEP};
pub use grid::{grid_angle, grid_mean, sphere_exp, FloatSection, SampledMap, Spectral};
pub use hessian::{agrees, compare_hessian, fd_hessian, fd_hessian_float, HessianComparison, HESSIAN_GRID};
pub use variation::{
    closed_form_bienergy, closed_form_derivative, phi_t, tension_profile_error, variation_derivatives,
    VariationReport,
};

/// Default grid size for quadrature.
pub const DEFAULT_GRID: usize = 16;
