//! Conformal fields of `S³(1/√2)` along the Clifford torus and their Rayleigh quotients for `J`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::grid::{grid_angle, grid_mean, FloatSection, Spectral};
use crate::torus::{clifford_point, FrameIndex, Section, Target, TrigPoly};

type Field4 = Vec<[f64; 4]>;

fn phi4(n: usize) -> Field4 {
    (0..n * n)
        .map(|p| {
            let q = clifford_point(grid_angle(n, p / n), grid_angle(n, p % n));
            [q[0], q[1], q[2], q[3]]
        })
        .collect()
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `V_a = a − 2⟨a, φ⟩φ`, the projection of a constant vector onto `TS³(1/√2)`.
fn conformal_field(a: &[f64; 4], n: usize) -> Field4 {
    phi4(n)
        .iter()
        .map(|p| {
            let c = 2.0 * dot4(a, p);
            std::array::from_fn(|k| a[k] - c * p[k])
        })
        .collect()
}

/// `X_γ u`, `X_θ u` for each ambient coordinate, with `X = 2∂`.
fn frame_derivatives(u: &Field4, sp: &Spectral) -> (Field4, Field4) {
    let n = sp.n();
    let mut dg = vec![[0.0; 4]; n * n];
    let mut dt = vec![[0.0; 4]; n * n];
    for k in 0..4 {
        let f: Vec<f64> = u.iter().map(|x| x[k]).collect();
        let (g, _) = sp.axis_derivatives(&f, 0);
        let (t, _) = sp.axis_derivatives(&f, 1);
        for p in 0..n * n {
            dg[p][k] = 2.0 * g[p];
            dt[p][k] = 2.0 * t[p];
        }
    }
    (dg, dt)
}

/// `(J V, V)` by the weak form `∫ |∇V|² − 4|V|² + 2|V^⊤|²`, in absolute units.
fn jacobi_quadratic_form(v: &Field4, sp: &Spectral) -> f64 {
    let n = sp.n();
    let phi = phi4(n);
    let (vg, vt) = frame_derivatives(v, sp);
    let (pg, pt) = frame_derivatives(&phi, sp);
    let proj = |u: &[f64; 4], p: &[f64; 4]| {
        let c = 2.0 * dot4(u, p);
        let w: [f64; 4] = std::array::from_fn(|k| u[k] - c * p[k]);
        dot4(&w, &w)
    };
    let density: Vec<f64> = (0..n * n)
        .map(|p| {
            let grad = proj(&vg[p], &phi[p]) + proj(&vt[p], &phi[p]);
            let tangent = dot4(&v[p], &pg[p]).powi(2) + dot4(&v[p], &pt[p]).powi(2);
            grad - 4.0 * dot4(&v[p], &v[p]) + 2.0 * tangent
        })
        .collect();
    grid_mean(&density) * PI * PI
}

fn l2(u: &Field4, v: &Field4) -> f64 {
    let d: Vec<f64> = u.iter().zip(v).map(|(a, b)| dot4(a, b)).collect();
    grid_mean(&d) * PI * PI
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rayleigh {
    pub a: [f64; 4],
    pub numerator: f64,
    pub denominator: f64,
    pub quotient: f64,
}

/// `((J V_a, V_a), (V_a, V_a), quotient)` by quadrature.
pub fn conformal_rayleigh(a: [f64; 4], grid_n: usize) -> Result<Rayleigh> {
    if a.iter().all(|x| *x == 0.0) || a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("conformal direction a must be a nonzero finite vector".into()));
    }
    let sp = Spectral::new(grid_n)?;
    let v = conformal_field(&a, grid_n);
    let numerator = jacobi_quadratic_form(&v, &sp);
    let denominator = l2(&v, &v);
    Ok(Rayleigh {
        a,
        numerator,
        denominator,
        quotient: numerator / denominator,
    })
}

/// The `μ₁`-eigensections `W_1..W_4` of `J` (without the normalising constant).
pub fn w_sections() -> Vec<Section> {
    use FrameIndex::*;
    let s = |parts: Vec<(FrameIndex, TrigPoly)>| {
        parts.into_iter().fold(Section::zero(Target::S3), |acc, (e, f)| {
            &acc + &Section::along(Target::S3, e, f).expect("S3 frame")
        })
    };
    vec![
        s(vec![(Gamma, TrigPoly::cos_g(1)), (Nu, TrigPoly::sin_g(1))]),
        s(vec![(Gamma, -&TrigPoly::sin_g(1)), (Nu, TrigPoly::cos_g(1))]),
        s(vec![(Theta, -&TrigPoly::cos_t(1)), (Nu, TrigPoly::sin_t(1))]),
        s(vec![(Theta, TrigPoly::sin_t(1)), (Nu, TrigPoly::cos_t(1))]),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointGram {
    /// `(V_{e_i}, W_j)` in absolute units.
    pub cross: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
    pub rank: usize,
}

/// Gram matrix of `{V_{e_1}, .., V_{e_4}, W_1, .., W_4}`; rank 8 means the spans meet only in 0.
pub fn joint_gram(grid_n: usize) -> Result<JointGram> {
    let n = grid_n;
    Spectral::new(n)?;
    let mut fields: Vec<Field4> = (0..4)
        .map(|k| {
            let mut a = [0.0; 4];
            a[k] = 1.0;
            conformal_field(&a, n)
        })
        .collect();
    for w in w_sections() {
        let f = FloatSection::from_section(&w);
        fields.push(
            (0..n * n)
                .map(|p| {
                    let v = f.ambient(grid_angle(n, p / n), grid_angle(n, p % n));
                    [v[0], v[1], v[2], v[3]]
                })
                .collect(),
        );
    }
    let g = DMatrix::from_fn(8, 8, |i, j| l2(&fields[i], &fields[j]));
    let cross = (0..4).map(|i| (4..8).map(|j| g[(i, j)]).collect()).collect();
    let mut sv: Vec<f64> = g.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let rank = sv.iter().filter(|s| **s > 1e-9 * sv[0]).count();
    Ok(JointGram {
        cross,
        singular_values: sv,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-8 * b.abs()
    }

    #[test]
    fn unit_direction() {
        let r = conformal_rayleigh([1.0, 0.0, 0.0, 0.0], 16).unwrap();
        let p2 = PI * PI;
        assert!(close(r.numerator, -p2), "{r:?}");
        assert!(close(r.denominator, 0.75 * p2));
        assert!(close(r.quotient, -4.0 / 3.0));
    }

    #[test]
    fn zero_direction_is_rejected() {
        assert!(conformal_rayleigh([0.0; 4], 16).is_err());
    }
}
