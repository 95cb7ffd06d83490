//! The `SO(2)×SO(2)`-equivariant family `Φ_{η,ν}` and its reduced bienergy on the orbit space.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix2, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::QSqrt2;
use crate::operators::i2_apply;
use crate::oracle::bienergy::{bienergy_with, DomainMetric};
use crate::oracle::grid::SampledMap;
use crate::torus::{l2_inner, FrameIndex, Section, Target};

/// Tolerance of the isometric-immersion flag.
pub const ISOMETRY_TOL: f64 = 1e-12;
/// Accepted size of the gradient at a critical point.
pub const GRADIENT_TOL: f64 = 1e-10;

/// A point `(η, ν)` of the orbit space together with the domain radii.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedPoint {
    pub eta: f64,
    pub nu: f64,
    pub r1: f64,
    pub r2: f64,
}

impl ReducedPoint {
    pub fn new(eta: f64, nu: f64, r1: f64, r2: f64) -> Result<Self> {
        if !(r1 > 0.0 && r2 > 0.0) || !r1.is_finite() || !r2.is_finite() {
            return Err(Error::InvalidInput(format!("radii must be positive, got R1 = {r1}, R2 = {r2}")));
        }
        if !(0.0..=PI).contains(&eta) || !(0.0..=FRAC_PI_2).contains(&nu) {
            return Err(Error::InvalidInput(format!(
                "(eta, nu) = ({eta}, {nu}) lies outside the sector [0, pi] x [0, pi/2]"
            )));
        }
        Ok(Self { eta, nu, r1, r2 })
    }

    /// `R₁ = sin η sin ν` and `R₂ = sin η cos ν`.
    pub fn isometric(&self) -> bool {
        let (r1, r2) = self.isometry_radii();
        (r1 - self.r1).abs() <= ISOMETRY_TOL && (r2 - self.r2).abs() <= ISOMETRY_TOL
    }

    fn isometry_radii(&self) -> (f64, f64) {
        (self.eta.sin() * self.nu.sin(), self.eta.sin() * self.nu.cos())
    }

    /// `Φ_{η,ν}(γ, θ) = (sin η sin ν e^{iγ}, sin η cos ν e^{iθ}, cos η)`.
    pub fn map_point(&self, gamma: f64, theta: f64) -> [f64; 5] {
        let a = self.eta.sin() * self.nu.sin();
        let b = self.eta.sin() * self.nu.cos();
        [a * gamma.cos(), a * gamma.sin(), b * theta.cos(), b * theta.sin(), self.eta.cos()]
    }

    fn with(&self, eta: f64, nu: f64) -> Self {
        Self { eta, nu, ..*self }
    }
}

struct Coeffs {
    c: f64,
    p: f64,
    q: f64,
    d: f64,
    s: f64,
}

fn coeffs(r1: f64, r2: f64) -> Coeffs {
    let (a, b) = (r1 * r1, r2 * r2);
    Coeffs {
        c: 1.0 / (32.0 * a * a * b * b),
        p: 5.0 * a * a - 2.0 * a * b + 5.0 * b * b,
        q: 3.0 * a * a + 2.0 * a * b + 3.0 * b * b,
        d: (a - b).powi(2),
        s: a * a - b * b,
    }
}

fn eval_closed(eta: f64, nu: f64, k: &Coeffs) -> f64 {
    let se = eta.sin();
    k.c * ((k.p + k.q * (2.0 * eta).cos()) * se * se - 2.0 * k.d * (4.0 * nu).cos() * se.powi(4)
        + 2.0 * k.s * (2.0 * nu).cos() * (2.0 * eta).sin().powi(2))
}

/// The reduced bienergy `Ê₂(η, ν)`, the constant density of `½|τ(Φ_{η,ν})|²`.
pub fn reduced_bienergy(p: &ReducedPoint) -> f64 {
    eval_closed(p.eta, p.nu, &coeffs(p.r1, p.r2))
}

/// `(∂Ê₂/∂η, ∂Ê₂/∂ν)` differentiated by hand from the closed form.
pub fn reduced_gradient(p: &ReducedPoint) -> [f64; 2] {
    let k = coeffs(p.r1, p.r2);
    let (eta, nu) = (p.eta, p.nu);
    let (se, ce) = (eta.sin(), eta.cos());
    let s2e = (2.0 * eta).sin();
    let d_eta = -2.0 * k.q * s2e * se * se + (k.p + k.q * (2.0 * eta).cos()) * s2e
        - 8.0 * k.d * (4.0 * nu).cos() * se.powi(3) * ce
        + 4.0 * k.s * (2.0 * nu).cos() * (4.0 * eta).sin();
    let d_nu = 8.0 * k.d * (4.0 * nu).sin() * se.powi(4) - 4.0 * k.s * (2.0 * nu).sin() * s2e * s2e;
    [k.c * d_eta, k.c * d_nu]
}

/// `E₂(Φ_{η,ν})` by spectral quadrature, and `Vol·Ê₂` for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureCheck {
    pub quadrature: f64,
    pub closed_form: f64,
    pub rel_error: f64,
}

pub fn reduced_bienergy_quadrature(p: &ReducedPoint, grid_n: usize) -> Result<QuadratureCheck> {
    let map = SampledMap::from_fn(grid_n, |g, t| p.map_point(g, t))?;
    let metric = DomainMetric { r1: p.r1, r2: p.r2 };
    let quadrature = bienergy_with(&map, &metric)?;
    let closed_form = reduced_bienergy(p) * metric.volume();
    let rel_error = (quadrature - closed_form).abs() / closed_form.abs().max(f64::MIN_POSITIVE);
    Ok(QuadratureCheck {
        quadrature,
        closed_form,
        rel_error,
    })
}

/// Criticality and isometry residuals `(∂_η Ê₂, ∂_ν Ê₂, R₁ − sin η sin ν, R₂ − sin η cos ν)`.
fn residual(p: &ReducedPoint) -> [f64; 4] {
    let g = reduced_gradient(p);
    let (r1, r2) = p.isometry_radii();
    [g[0], g[1], p.r1 - r1, p.r2 - r2]
}

fn norm(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Gauss–Newton on the residual system, staying inside the open sector.
fn gauss_newton(start: ReducedPoint) -> Option<ReducedPoint> {
    let mut p = start;
    let h = 1e-7;
    for _ in 0..60 {
        let r = residual(&p);
        if r[..2].iter().all(|x| x.abs() < GRADIENT_TOL) && r[2..].iter().all(|x| x.abs() < ISOMETRY_TOL) {
            return Some(p);
        }
        let re = residual(&p.with(p.eta + h, p.nu));
        let rm = residual(&p.with(p.eta - h, p.nu));
        let ne = residual(&p.with(p.eta, p.nu + h));
        let nm = residual(&p.with(p.eta, p.nu - h));
        let jac = nalgebra::Matrix4x2::from_fn(|i, j| {
            if j == 0 {
                (re[i] - rm[i]) / (2.0 * h)
            } else {
                (ne[i] - nm[i]) / (2.0 * h)
            }
        });
        let rv = nalgebra::Vector4::from_column_slice(&r);
        let step = (jac.transpose() * jac).try_inverse()? * (jac.transpose() * rv);
        let (eta, nu) = (p.eta - step[0], p.nu - step[1]);
        if !(eta > 0.0 && eta < FRAC_PI_2 && nu > 0.0 && nu < FRAC_PI_2) {
            return None;
        }
        p = p.with(eta, nu);
    }
    None
}

/// Isometric critical points of `Ê₂` in the open sector `0 < η, ν < π/2`.
///
/// Gauss–Newton is started from every node of an `8 × 8` grid; converged
/// points closer than `1e-8` are merged.
pub fn reduced_critical(r1: f64, r2: f64) -> Result<Vec<ReducedPoint>> {
    ReducedPoint::new(FRAC_PI_2 / 2.0, FRAC_PI_2 / 2.0, r1, r2)?;
    let k = 8;
    let mut found: Vec<ReducedPoint> = Vec::new();
    for i in 1..k {
        for j in 1..k {
            let start = ReducedPoint {
                eta: FRAC_PI_2 * i as f64 / k as f64,
                nu: FRAC_PI_2 * j as f64 / k as f64,
                r1,
                r2,
            };
            if let Some(p) = gauss_newton(start) {
                if !found.iter().any(|q| (q.eta - p.eta).abs() + (q.nu - p.nu).abs() < 1e-8) {
                    found.push(p);
                }
            }
        }
    }
    found.sort_by(|a, b| a.eta.total_cmp(&b.eta).then(a.nu.total_cmp(&b.nu)));
    Ok(found)
}

/// Local minima of the residual norm on an `n × n` grid of the open sector whose
/// value is below `threshold`; an independent scan for isometric critical points.
pub fn residual_scan(r1: f64, r2: f64, n: usize, threshold: f64) -> Vec<(f64, f64, f64)> {
    let step = FRAC_PI_2 / (n + 1) as f64;
    let value = |i: usize, j: usize| {
        let p = ReducedPoint {
            eta: step * (i + 1) as f64,
            nu: step * (j + 1) as f64,
            r1,
            r2,
        };
        norm(&residual(&p))
    };
    let grid: Vec<Vec<f64>> = (0..n).into_par_iter().map(|i| (0..n).map(|j| value(i, j)).collect()).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = grid[i][j];
            let neighbours = [(-1i64, 0i64), (1, 0), (0, -1), (0, 1), (-1, -1), (1, 1), (-1, 1), (1, -1)];
            let is_min = neighbours.iter().all(|(di, dj)| {
                let (a, b) = (i as i64 + di, j as i64 + dj);
                a < 0 || b < 0 || a >= n as i64 || b >= n as i64 || grid[a as usize][b as usize] >= v
            });
            let (eta, nu) = (step * (i + 1) as f64, step * (j + 1) as f64);
            // Ties on a plateau give adjacent minima; keep one per cluster.
            let near = out
                .iter()
                .any(|&(a, b, _): &(f64, f64, f64)| (a - eta).abs() <= 2.0 * step && (b - nu).abs() <= 2.0 * step);
            if is_min && v < threshold && !near {
                out.push((eta, nu, v));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedHessian {
    pub point: ReducedPoint,
    /// Second partials in the `(∂/∂η, ∂/∂ν)` basis.
    pub matrix: [[f64; 2]; 2],
    pub gradient: [f64; 2],
    pub eigenvalues: [f64; 2],
    pub index: usize,
    pub nullity: usize,
    pub warning: Option<String>,
}

/// Hessian of `Ê₂` by Richardson-extrapolated central differences of the closed form.
pub fn reduced_hessian(p: &ReducedPoint) -> Result<ReducedHessian> {
    let f = |eta: f64, nu: f64| reduced_bienergy(&p.with(eta, nu));
    let (e, n) = (p.eta, p.nu);
    let second = |h: f64| {
        let hee = (f(e + h, n) - 2.0 * f(e, n) + f(e - h, n)) / (h * h);
        let hnn = (f(e, n + h) - 2.0 * f(e, n) + f(e, n - h)) / (h * h);
        let hen = (f(e + h, n + h) - f(e + h, n - h) - f(e - h, n + h) + f(e - h, n - h)) / (4.0 * h * h);
        [hee, hen, hnn]
    };
    let raw: Vec<[f64; 3]> = (0..3).map(|k| second(1e-2 / 2f64.powi(k))).collect();
    let extrap = |idx: usize| {
        let a: Vec<f64> = raw.iter().map(|r| r[idx]).collect();
        let b = [(4.0 * a[1] - a[0]) / 3.0, (4.0 * a[2] - a[1]) / 3.0];
        (16.0 * b[1] - b[0]) / 15.0
    };
    let (hee, hen, hnn) = (extrap(0), extrap(1), extrap(2));
    let matrix = [[hee, hen], [hen, hnn]];
    let gradient = reduced_gradient(p);
    let warning = (norm(&gradient) > 1e-8).then(|| {
        format!("point is not critical: gradient = ({:.3e}, {:.3e})", gradient[0], gradient[1])
    });
    let eig = SymmetricEigen::new(Matrix2::new(hee, hen, hen, hnn)).eigenvalues;
    let mut ev = [eig[0], eig[1]];
    ev.sort_by(|a, b| a.total_cmp(b));
    let tol = 1e-6;
    Ok(ReducedHessian {
        point: *p,
        matrix,
        gradient,
        eigenvalues: ev,
        index: ev.iter().filter(|x| **x < -tol).count(),
        nullity: ev.iter().filter(|x| x.abs() <= tol).count(),
        warning,
    })
}

/// The same matrix from exact pairings along the Clifford torus:
/// `[(I₂V_η,V_η), (I₂V_ν,V_η)/√2; ·, (I₂V_ν,V_ν)/2] / Vol`, using `dπ(V_η) = ∂_η`, `dπ(V_ν) = √2 ∂_ν`.
pub fn exact_equivariant_hessian() -> Result<[[QSqrt2; 2]; 2]> {
    let eta = Section::frame(Target::S4, FrameIndex::Eta)?;
    let nu = Section::frame(Target::S4, FrameIndex::Nu)?;
    let vol = l2_inner(&Section::frame(Target::S4, FrameIndex::Gamma)?, &Section::frame(Target::S4, FrameIndex::Gamma)?)?;
    let r2_inv = QSqrt2::from_parts(0, 1, 1, 2);
    let i_eta = i2_apply(&eta)?;
    let i_nu = i2_apply(&nu)?;
    let a = l2_inner(&i_eta, &eta)?.checked_div(&vol)?;
    let b = &l2_inner(&i_nu, &eta)?.checked_div(&vol)? * &r2_inv;
    let c = &l2_inner(&i_eta, &nu)?.checked_div(&vol)? * &r2_inv;
    let d = &l2_inner(&i_nu, &nu)?.checked_div(&vol)? * &QSqrt2::frac(1, 2);
    if b != c {
        return Err(Error::Inconsistency(format!("equivariant Hessian is not symmetric: {b} vs {c}")));
    }
    Ok([[a, b], [c, d]])
}
