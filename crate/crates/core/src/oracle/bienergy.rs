//! Tension field and bienergy of sampled sphere-valued maps.

use crate::error::Result;
use crate::oracle::grid::{grid_mean, SampledMap, Spectral};

/// Flat metric `R₁²dγ² + R₂²dθ²` on the torus `[0, 2π)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainMetric {
    pub r1: f64,
    pub r2: f64,
}

impl DomainMetric {
    /// `S¹(½) × S¹(½)`, the domain of the Clifford torus.
    pub const CLIFFORD: DomainMetric = DomainMetric { r1: 0.5, r2: 0.5 };

    pub fn volume(&self) -> f64 {
        4.0 * std::f64::consts::PI.powi(2) * self.r1 * self.r2
    }
}

/// `τ(φ) = −Δφ + |dφ|²φ` at every grid point, with `Δ = −(R₁⁻²∂²_γ + R₂⁻²∂²_θ)`.
pub fn tension(map: &SampledMap, metric: &DomainMetric) -> Result<Vec<[f64; 5]>> {
    let n = map.n();
    let sp = Spectral::new(n)?;
    let (ag, at) = (metric.r1.powi(-2), metric.r2.powi(-2));
    let mut tau = vec![[0.0; 5]; n * n];
    let mut energy = vec![0.0; n * n];
    let mut lap = vec![[0.0; 5]; n * n];
    for k in 0..5 {
        let f = map.coordinate(k);
        let (fg, fgg) = sp.axis_derivatives(&f, 0);
        let (ft, ftt) = sp.axis_derivatives(&f, 1);
        for p in 0..n * n {
            energy[p] += ag * fg[p] * fg[p] + at * ft[p] * ft[p];
            lap[p][k] = ag * fgg[p] + at * ftt[p];
        }
    }
    for (p, pt) in map.points().iter().enumerate() {
        for k in 0..5 {
            tau[p][k] = lap[p][k] + energy[p] * pt[k];
        }
    }
    Ok(tau)
}

/// `|τ|²` at every grid point.
pub fn tension_norm_sq(map: &SampledMap, metric: &DomainMetric) -> Result<Vec<f64>> {
    Ok(tension(map, metric)?
        .iter()
        .map(|t| t.iter().map(|x| x * x).sum())
        .collect())
}

/// `E₂ = ½∫|τ|² dV` by the trapezoid rule.
pub fn bienergy_with(map: &SampledMap, metric: &DomainMetric) -> Result<f64> {
    Ok(0.5 * grid_mean(&tension_norm_sq(map, metric)?) * metric.volume())
}

/// Bienergy of a map from the Clifford torus domain.
pub fn bienergy(map: &SampledMap) -> Result<f64> {
    bienergy_with(map, &DomainMetric::CLIFFORD)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn clifford_bienergy() {
        for n in [8, 16, 32] {
            let e = bienergy(&SampledMap::clifford(n).unwrap()).unwrap();
            assert!((e - 2.0 * PI * PI).abs() < 1e-10, "{n}: {e}");
        }
    }

    #[test]
    fn minimal_clifford_in_equator_is_harmonic() {
        let map = SampledMap::from_fn(16, |g, t| {
            let r = FRAC_1_SQRT_2;
            [r * g.cos(), r * g.sin(), r * t.cos(), r * t.sin(), 0.0]
        })
        .unwrap();
        let m = DomainMetric { r1: FRAC_1_SQRT_2, r2: FRAC_1_SQRT_2 };
        assert!(bienergy_with(&map, &m).unwrap().abs() < 1e-12);
    }
}
