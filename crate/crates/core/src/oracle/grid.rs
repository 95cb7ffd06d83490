//! Uniform grids on the torus, spectral differentiation and trapezoid quadrature.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::torus::{clifford_point, frame_vector_r5, Section};

/// Allowed deviation of a sample from the unit sphere.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Samples of a map `𝕋 → S⁴ ⊂ ℝ⁵` on the uniform `N × N` grid over `[0, 2π)²`.
///
/// Index `i·N + j` holds the value at `(γ_i, θ_j) = (2πi/N, 2πj/N)`.
#[derive(Debug, Clone)]
pub struct SampledMap {
    n: usize,
    points: Vec<[f64; 5]>,
}

pub fn grid_angle(n: usize, i: usize) -> f64 {
    2.0 * PI * i as f64 / n as f64
}

fn check_grid(n: usize) -> Result<()> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidInput(format!("grid size must be a power of two >= 4, got {n}")));
    }
    Ok(())
}

impl SampledMap {
    pub fn from_fn(n: usize, f: impl Fn(f64, f64) -> [f64; 5]) -> Result<Self> {
        check_grid(n)?;
        let mut points = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = f(grid_angle(n, i), grid_angle(n, j));
                let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > UNIT_NORM_TOL {
                    return Err(Error::InvalidInput(format!(
                        "sample at grid point ({i}, {j}) has norm {norm}, not 1"
                    )));
                }
                points.push(p);
            }
        }
        Ok(Self { n, points })
    }

    /// The Clifford torus itself.
    pub fn clifford(n: usize) -> Result<Self> {
        Self::from_fn(n, clifford_point)
    }

    /// `(Φ + tV)/|Φ + tV|`.
    pub fn normalized_linear(n: usize, v: &FloatSection, t: f64) -> Result<Self> {
        Self::from_fn(n, |g, th| {
            let p = clifford_point(g, th);
            let w = v.ambient(g, th);
            let mut q: [f64; 5] = std::array::from_fn(|k| p[k] + t * w[k]);
            let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            q.iter_mut().for_each(|x| *x /= norm);
            q
        })
    }

    /// `exp_Φ(Σ c_k V_k)` pointwise on the sphere.
    pub fn geodesic(n: usize, dirs: &[(f64, &FloatSection)]) -> Result<Self> {
        Self::from_fn(n, |g, th| {
            let p = clifford_point(g, th);
            let mut u = [0.0; 5];
            for (c, v) in dirs {
                let w = v.ambient(g, th);
                u.iter_mut().zip(w).for_each(|(a, b)| *a += c * b);
            }
            sphere_exp(&p, &u)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[[f64; 5]] {
        &self.points
    }

    /// One ambient coordinate as a scalar field.
    pub fn coordinate(&self, k: usize) -> Vec<f64> {
        self.points.iter().map(|p| p[k]).collect()
    }
}

/// `exp_p(u) = cos|u| p + sin|u| u/|u|` for `u ⊥ p`; series below `|u| = 1e-6`.
pub fn sphere_exp(p: &[f64; 5], u: &[f64; 5]) -> [f64; 5] {
    let r = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (c, s) = if r < 1e-6 {
        let r2 = r * r;
        (1.0 - r2 / 2.0 + r2 * r2 / 24.0, 1.0 - r2 / 6.0 + r2 * r2 / 120.0)
    } else {
        (r.cos(), r.sin() / r)
    };
    let mut q: [f64; 5] = std::array::from_fn(|k| c * p[k] + s * u[k]);
    // Remove the rounding drift off the sphere.
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.iter_mut().for_each(|x| *x /= norm);
    q
}

/// A section with floating-point coefficients, `Σ c · monomial · V_e`.
#[derive(Debug, Clone, Default)]
pub struct FloatSection {
    terms: Vec<(f64, crate::torus::Monomial, crate::torus::FrameIndex)>,
}

impl FloatSection {
    pub fn from_section(v: &Section) -> Self {
        Self::from_scaled(&[(1.0, v)])
    }

    /// `Σ c_k v_k` with real weights.
    pub fn from_scaled(parts: &[(f64, &Section)]) -> Self {
        let mut terms = Vec::new();
        for (w, v) in parts {
            for (&e, f) in v.target().frames().iter().zip(v.components()) {
                for (m, c) in f.terms() {
                    terms.push((w * c.to_f64(), *m, e));
                }
            }
        }
        Self { terms }
    }

    /// Value in ℝ⁵ at `Φ(γ, θ)`.
    pub fn ambient(&self, gamma: f64, theta: f64) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (c, m, e) in &self.terms {
            let f = c * m.eval(gamma, theta);
            let v = frame_vector_r5(*e, gamma, theta);
            out.iter_mut().zip(v).for_each(|(a, b)| *a += f * b);
        }
        out
    }
}

/// Spectral derivatives on an `N × N` periodic grid.
pub struct Spectral {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Spectral {
    pub fn new(n: usize) -> Result<Self> {
        check_grid(n)?;
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// First and second derivatives along one axis (0 = γ, 1 = θ).
    ///
    /// The Nyquist mode is dropped from the first derivative, where its sign is
    /// ambiguous; inputs are assumed band-limited below `N/2`.
    pub fn axis_derivatives(&self, field: &[f64], axis: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let idx = |line: usize, k: usize| if axis == 0 { k * n + line } else { line * n + k };
        let mut d1 = vec![0.0; n * n];
        let mut d2 = vec![0.0; n * n];
        let mut buf = vec![Complex::new(0.0, 0.0); n];
        let mut b1 = buf.clone();
        let scale = 1.0 / n as f64;
        for line in 0..n {
            for (k, b) in buf.iter_mut().enumerate() {
                *b = Complex::new(field[idx(line, k)], 0.0);
            }
            self.fwd.process(&mut buf);
            for k in 0..n {
                let freq = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
                let first = if 2 * k == n { 0.0 } else { freq };
                b1[k] = buf[k] * Complex::new(0.0, first);
                buf[k] *= -freq * freq;
            }
            self.inv.process(&mut b1);
            self.inv.process(&mut buf);
            for k in 0..n {
                d1[idx(line, k)] = b1[k].re * scale;
                d2[idx(line, k)] = buf[k].re * scale;
            }
        }
        (d1, d2)
    }
}

/// Trapezoid mean over the grid, exact for trigonometric polynomials of degree below `N`.
pub fn grid_mean(field: &[f64]) -> f64 {
    field.iter().sum::<f64>() / field.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids_and_samples() {
        assert!(SampledMap::clifford(12).is_err());
        assert!(SampledMap::from_fn(8, |_, _| [1.0, 1.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn derivatives_of_trig_polynomial() {
        let n = 16;
        let sp = Spectral::new(n).unwrap();
        let f: Vec<f64> = (0..n * n)
            .map(|k| {
                let (g, t) = (grid_angle(n, k / n), grid_angle(n, k % n));
                (3.0 * g).sin() * (2.0 * t).cos()
            })
            .collect();
        let (dg, dgg) = sp.axis_derivatives(&f, 0);
        let (dt, _) = sp.axis_derivatives(&f, 1);
        for k in 0..n * n {
            let (g, t) = (grid_angle(n, k / n), grid_angle(n, k % n));
            assert!((dg[k] - 3.0 * (3.0 * g).cos() * (2.0 * t).cos()).abs() < 1e-12);
            assert!((dgg[k] + 9.0 * f[k]).abs() < 1e-12);
            assert!((dt[k] + 2.0 * (3.0 * g).sin() * (2.0 * t).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn exp_stays_on_sphere() {
        let p = clifford_point(0.3, 1.1);
        let v = frame_vector_r5(crate::torus::FrameIndex::Eta, 0.3, 1.1);
        for r in [0.0, 1e-8, 0.5, 2.0] {
            let u = v.map(|x| r * x);
            let q = sphere_exp(&p, &u);
            let dot: f64 = q.iter().zip(&p).map(|(a, b)| a * b).sum();
            assert!((dot - r.cos()).abs() < 1e-12);
        }
    }
}
