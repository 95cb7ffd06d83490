//! Finite-difference Hessian of `E₂` over geodesic two-parameter variations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::QSqrt2;
use crate::oracle::bienergy::bienergy;
use crate::oracle::fd::{mixed_derivative, FdEstimate, DEFAULT_STEP};
use crate::oracle::grid::{FloatSection, SampledMap};
use crate::operators::i2_apply;
use crate::torus::{l2_inner, Section};

pub const HESSIAN_GRID: usize = 32;
pub const REL_TOL: f64 = 1e-4;
pub const ABS_TOL_PI2: f64 = 1e-6;

/// `∂²/∂t∂s E₂(exp_Φ(tV + sW))` at the origin, for float-coefficient sections.
pub fn fd_hessian_float(v: &FloatSection, w: &FloatSection, grid_n: usize) -> Result<FdEstimate> {
    mixed_derivative(
        |t, s| bienergy(&SampledMap::geodesic(grid_n, &[(t, v), (s, w)])?),
        DEFAULT_STEP,
        ABS_TOL_PI2 * PI * PI,
    )
}

pub fn fd_hessian(v: &Section, w: &Section, grid_n: usize) -> Result<FdEstimate> {
    fd_hessian_float(&FloatSection::from_section(v), &FloatSection::from_section(w), grid_n)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HessianComparison {
    pub v: String,
    pub w: String,
    pub finite_difference: FdEstimate,
    /// `(I₂V, W)` in units of `π²`.
    pub exact_pi2: QSqrt2,
    pub exact: f64,
    pub within_tolerance: bool,
}

/// Compares the finite-difference Hessian with `π²·(I₂V, W)`.
pub fn compare_hessian(v: &Section, w: &Section, grid_n: usize) -> Result<HessianComparison> {
    let exact_pi2 = l2_inner(&i2_apply(v)?, w)?;
    let exact = exact_pi2.to_f64() * PI * PI;
    let fd = fd_hessian(v, w, grid_n)?;
    Ok(HessianComparison {
        v: v.to_string(),
        w: w.to_string(),
        within_tolerance: agrees(fd.value, exact),
        finite_difference: fd,
        exact_pi2,
        exact,
    })
}

/// Relative agreement, or absolute `10⁻⁶π²` when the exact value vanishes.
pub fn agrees(got: f64, exact: f64) -> bool {
    let abs = ABS_TOL_PI2 * PI * PI;
    if exact.abs() < abs {
        got.abs() <= abs
    } else {
        (got - exact).abs() <= REL_TOL * exact.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{FrameIndex, Target};

    #[test]
    fn eta_direction_is_negative() {
        let eta = Section::frame(Target::S4, FrameIndex::Eta).unwrap();
        let c = compare_hessian(&eta, &eta, 16).unwrap();
        assert_eq!(c.exact_pi2, QSqrt2::from_int(-16));
        assert!(c.within_tolerance, "{c:?}");
    }

    #[test]
    fn nu_direction_is_null() {
        let nu = Section::frame(Target::S4, FrameIndex::Nu).unwrap();
        let c = compare_hessian(&nu, &nu, 16).unwrap();
        assert!(c.within_tolerance, "{c:?}");
    }
}
