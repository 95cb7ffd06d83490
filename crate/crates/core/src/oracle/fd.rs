//! Central differences in the variation parameters with Richardson extrapolation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default initial step; it is halved twice.
pub const DEFAULT_STEP: f64 = 1e-2;
pub const LEVELS: usize = 3;

/// Central-difference weights `(offset, weight)` for the `order`-th derivative,
/// to be divided by `h^order`.
fn stencil(order: usize) -> Result<&'static [(f64, f64)]> {
    Ok(match order {
        1 => &[(1.0, 0.5), (-1.0, -0.5)],
        2 => &[(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)],
        3 => &[(2.0, 0.5), (1.0, -1.0), (-1.0, 1.0), (-2.0, -0.5)],
        4 => &[(2.0, 1.0), (1.0, -4.0), (0.0, 6.0), (-1.0, -4.0), (-2.0, 1.0)],
        _ => return Err(Error::InvalidInput(format!("derivative order must be 1..4, got {order}"))),
    })
}

/// A finite-difference estimate with its error diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdEstimate {
    pub value: f64,
    /// Difference between the two finest extrapolation levels.
    pub truncation_estimate: f64,
    /// Bound on amplified rounding error at the finest step.
    pub roundoff_estimate: f64,
    pub steps: Vec<f64>,
    pub warning: Option<String>,
}

/// Neville-style table for an `h²` error expansion; returns the two finest entries.
fn richardson(raw: &[f64]) -> (f64, f64) {
    let mut row = raw.to_vec();
    let mut prev = row[row.len() - 1];
    let mut factor = 4.0;
    while row.len() > 1 {
        prev = row[row.len() - 1];
        row = row
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        factor *= 4.0;
    }
    (row[0], prev)
}

fn finish(raw: Vec<f64>, steps: Vec<f64>, roundoff: f64, tolerance: f64, order: u32) -> FdEstimate {
    let (value, prev) = richardson(&raw);
    let truncation_estimate = (value - prev).abs();
    let warning = (roundoff > tolerance).then(|| {
        let h = steps[steps.len() - 1];
        let recommended = h * (roundoff / tolerance).powf(1.0 / order as f64);
        format!(
            "roundoff-dominated: estimated rounding error {roundoff:.2e} exceeds {tolerance:.2e} at step {h:.2e}; \
             use a finest step of at least {recommended:.2e}"
        )
    });
    FdEstimate {
        value,
        truncation_estimate,
        roundoff_estimate: roundoff,
        steps,
        warning,
    }
}

/// `d^order/dt^order g(0)`; a warning is attached when rounding error may exceed `tolerance`.
pub fn derivative(
    g: impl Fn(f64) -> Result<f64>,
    order: usize,
    h0: f64,
    tolerance: f64,
) -> Result<FdEstimate> {
    let st = stencil(order)?;
    if !(h0 > 0.0) {
        return Err(Error::InvalidInput(format!("step must be positive, got {h0}")));
    }
    let steps: Vec<f64> = (0..LEVELS).map(|k| h0 / 2f64.powi(k as i32)).collect();
    let mut raw = Vec::with_capacity(LEVELS);
    let mut scale = 0.0f64;
    for &h in &steps {
        let mut acc = 0.0;
        for &(off, w) in st {
            let v = g(off * h)?;
            scale = scale.max(v.abs());
            acc += w * v;
        }
        raw.push(acc / h.powi(order as i32));
    }
    let wsum: f64 = st.iter().map(|(_, w)| w.abs()).sum();
    let roundoff = 4.0 * f64::EPSILON * scale * wsum / steps[LEVELS - 1].powi(order as i32);
    Ok(finish(raw, steps, roundoff, tolerance, order as u32))
}

/// `∂²g/∂t∂s (0, 0)` by the four-point central stencil.
pub fn mixed_derivative(g: impl Fn(f64, f64) -> Result<f64>, h0: f64, tolerance: f64) -> Result<FdEstimate> {
    if !(h0 > 0.0) {
        return Err(Error::InvalidInput(format!("step must be positive, got {h0}")));
    }
    let steps: Vec<f64> = (0..LEVELS).map(|k| h0 / 2f64.powi(k as i32)).collect();
    let mut raw = Vec::with_capacity(LEVELS);
    let mut scale = 0.0f64;
    for &h in &steps {
        let vals = [g(h, h)?, g(h, -h)?, g(-h, h)?, g(-h, -h)?];
        scale = vals.iter().fold(scale, |a, v| a.max(v.abs()));
        raw.push((vals[0] - vals[1] - vals[2] + vals[3]) / (4.0 * h * h));
    }
    let roundoff = 4.0 * f64::EPSILON * scale / steps[LEVELS - 1].powi(2);
    Ok(finish(raw, steps, roundoff, tolerance, 2))
}
