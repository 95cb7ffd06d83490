//! Exact and numerical second-variation analysis of the Clifford torus
//! `𝕋 → S³(1/√2) ⊂ S⁴` as a biharmonic, harmonic and p-harmonic map.

pub mod equivariant;
pub mod error;
pub mod exact;
pub mod kernel;
pub mod operators;
pub mod oracle;
pub mod properties;
pub mod spectrum;
pub mod torus;

pub use error::{Error, Result};
