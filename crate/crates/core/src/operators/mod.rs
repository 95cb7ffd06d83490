//! Second-variation operators as exact maps on sections.

pub mod i2;
pub mod jacobi;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::torus::{Section, Target};

pub use i2::{i2_apply, i2_closed_form, i2_terms, I2Terms};
pub use jacobi::{
    divergence_density, divergence_pairing, dstar_term, i2_projected_apply, jacobi_apply,
    jacobi_closed_form, jp_apply, jp_closed_form, jp_coefficients, jp_coefficients_f64,
};

/// Which operator a spectral computation concerns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorKind {
    /// Biharmonic Jacobi operator along `Φ: 𝕋 → S⁴`.
    I2,
    /// Harmonic Jacobi operator along `φ: 𝕋 → S³(1/√2)`.
    J,
    /// Jacobi operator of the p-energy along `φ`.
    Jp { p: f64 },
    /// `I₂` restricted and projected to sections tangent to `S³(1/√2)`.
    I2Projected,
}

impl OperatorKind {
    pub fn target(&self) -> Target {
        match self {
            OperatorKind::I2 => Target::S4,
            _ => Target::S3,
        }
    }

    /// True unless this is `J_p` with non-integer `p`.
    pub fn is_exact(&self) -> bool {
        match self {
            OperatorKind::Jp { p } => p.fract() == 0.0,
            _ => true,
        }
    }

    pub fn apply(&self, v: &Section) -> Result<Section> {
        match *self {
            OperatorKind::I2 => i2_apply(v),
            OperatorKind::J => jacobi_apply(v),
            OperatorKind::Jp { p } => jp_apply(p, v),
            OperatorKind::I2Projected => i2_projected_apply(v),
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::I2 => write!(f, "I2"),
            OperatorKind::J => write!(f, "J"),
            OperatorKind::Jp { p } => write!(f, "Jp(p={p})"),
            OperatorKind::I2Projected => write!(f, "I2Projected"),
        }
    }
}
