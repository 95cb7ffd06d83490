//! The normalised variation `Φ_t = (Φ + tV_ν)/√(1+t²)` and the derivatives of `E₂(Φ_t)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Poly, QSqrt2};
use crate::oracle::bienergy::{bienergy, tension_norm_sq, DomainMetric};
use crate::oracle::fd::{derivative, FdEstimate, DEFAULT_STEP};
use crate::oracle::grid::{FloatSection, SampledMap};
use crate::torus::{FrameIndex, Section, Target};

fn v_nu() -> FloatSection {
    FloatSection::from_section(&Section::frame(Target::S4, FrameIndex::Nu).expect("V_nu exists on S4"))
}

pub fn phi_t(n: usize, t: f64) -> Result<SampledMap> {
    SampledMap::normalized_linear(n, &v_nu(), t)
}

/// `E₂(Φ_t)/π² = (2 + 4t²)/(1 + t²)²` as numerator and denominator.
fn closed_form() -> (Poly, Poly) {
    (Poly::from_ints(&[2, 0, 4]), Poly::from_ints(&[1, 0, 1]).pow(2))
}

/// Exact `d^order/dt^order (E₂(Φ_t)/π²)` at `t = 0`, by differentiating the rational function.
pub fn closed_form_derivative(order: usize) -> Result<QSqrt2> {
    let (mut num, mut den) = closed_form();
    for _ in 0..order {
        let next = &(&num.derivative() * &den) - &(&num * &den.derivative());
        den = &den * &den;
        num = next;
    }
    let zero = QSqrt2::from_int(0);
    num.eval(&zero).checked_div(&den.eval(&zero))
}

pub fn closed_form_bienergy(t: f64) -> f64 {
    (2.0 + 4.0 * t * t) * PI * PI / (1.0 + t * t).powi(2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationReport {
    pub order: usize,
    pub grid_n: usize,
    pub finite_difference: FdEstimate,
    /// Exact value in units of `π²`.
    pub closed_form_pi2: QSqrt2,
    pub closed_form: f64,
    pub abs_error: f64,
}

/// Tolerance used for the roundoff warning at each order.
fn tolerance(order: usize) -> f64 {
    if order == 4 {
        1e-4 * 48.0 * PI * PI
    } else {
        1e-6 * PI * PI
    }
}

/// `d^order/dt^order E₂(Φ_t)` at `t = 0`, by quadrature plus Richardson-extrapolated differences.
pub fn variation_derivatives(order: usize, grid_n: usize, h0: Option<f64>) -> Result<VariationReport> {
    if !(1..=4).contains(&order) {
        return Err(Error::InvalidInput(format!("order must be 1..4, got {order}")));
    }
    let fd = derivative(|t| bienergy(&phi_t(grid_n, t)?), order, h0.unwrap_or(DEFAULT_STEP), tolerance(order))?;
    let exact = closed_form_derivative(order)?;
    let closed = exact.to_f64() * PI * PI;
    Ok(VariationReport {
        order,
        grid_n,
        abs_error: (fd.value - closed).abs(),
        finite_difference: fd,
        closed_form_pi2: exact,
        closed_form: closed,
    })
}

/// Largest pointwise deviation of `|τ(Φ_t)|²` from `(4 + 8t²)/(1 + t²)²`.
pub fn tension_profile_error(t: f64, grid_n: usize) -> Result<f64> {
    let want = (4.0 + 8.0 * t * t) / (1.0 + t * t).powi(2);
    let got = tension_norm_sq(&phi_t(grid_n, t)?, &DomainMetric::CLIFFORD)?;
    Ok(got.iter().fold(0.0f64, |a, x| a.max((x - want).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_derivatives() {
        let want = [2, 0, 0, 0, -48];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(closed_form_derivative(k).unwrap(), QSqrt2::from_int(*w));
        }
    }

    #[test]
    fn bienergy_along_family() {
        for t in [0.0, 0.3, 1.0] {
            let e = bienergy(&phi_t(16, t).unwrap()).unwrap();
            assert!((e - closed_form_bienergy(t)).abs() < 1e-10);
        }
        assert!(tension_profile_error(0.7, 16).unwrap() < 1e-10);
    }

    #[test]
    fn rejects_order() {
        assert!(variation_derivatives(5, 16, None).is_err());
    }
}
