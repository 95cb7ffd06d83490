//! Moving frames along the Clifford torus and their connection table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::QSqrt2;

/// Which pull-back bundle a section lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    /// `Φ⁻¹TS⁴`, frame `(V_γ, V_θ, V_ν, V_η)`.
    S4,
    /// `φ⁻¹TS³(1/√2)`, frame `(V_γ, V_θ, V_ν)`.
    S3,
}

impl Target {
    pub fn frames(self) -> &'static [FrameIndex] {
        match self {
            Target::S4 => &[
                FrameIndex::Gamma,
                FrameIndex::Theta,
                FrameIndex::Nu,
                FrameIndex::Eta,
            ],
            Target::S3 => &[FrameIndex::Gamma, FrameIndex::Theta, FrameIndex::Nu],
        }
    }

    pub fn rank(self) -> usize {
        self.frames().len()
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::S4 => "S4",
            Target::S3 => "S3",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the orthonormal frame fields along the immersion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FrameIndex {
    Gamma,
    Theta,
    Nu,
    Eta,
}

impl FrameIndex {
    pub fn slot(self) -> usize {
        match self {
            FrameIndex::Gamma => 0,
            FrameIndex::Theta => 1,
            FrameIndex::Nu => 2,
            FrameIndex::Eta => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameIndex::Gamma => "V_gamma",
            FrameIndex::Theta => "V_theta",
            FrameIndex::Nu => "V_nu",
            FrameIndex::Eta => "V_eta",
        }
    }

    pub fn check(self, target: Target) -> Result<()> {
        if self == FrameIndex::Eta && target == Target::S3 {
            return Err(Error::InvalidFrame {
                frame: self.name(),
                target: target.name(),
            });
        }
        Ok(())
    }
}

/// Orthonormal domain directions `X_γ = 2∂_γ`, `X_θ = 2∂_θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    XGamma,
    XTheta,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::XGamma, Direction::XTheta];

    /// The frame field `dΦ(X)`.
    pub fn image(self) -> FrameIndex {
        match self {
            Direction::XGamma => FrameIndex::Gamma,
            Direction::XTheta => FrameIndex::Theta,
        }
    }
}

/// `∇_X V_e` as a list of `(coefficient, frame)` pairs with constant coefficients.
///
/// The `S3` table is the `S4` table with every `V_η` term removed: `S³(1/√2)` is
/// totally umbilic in `S⁴` with unit normal `V_η`, so its connection is the
/// tangential part of the ambient one.
pub fn connection_table(x: Direction, e: FrameIndex, target: Target) -> Result<Vec<(QSqrt2, FrameIndex)>> {
    use Direction::*;
    use FrameIndex::*;
    e.check(target)?;
    let r2 = QSqrt2::sqrt2;
    let one = || QSqrt2::from_int(1);
    let full: Vec<(QSqrt2, FrameIndex)> = match (x, e) {
        (XGamma, Gamma) => vec![(-r2(), Nu), (-one(), Eta)],
        (XGamma, Theta) => vec![],
        (XGamma, Nu) => vec![(r2(), Gamma)],
        (XGamma, Eta) => vec![(one(), Gamma)],
        (XTheta, Gamma) => vec![],
        (XTheta, Theta) => vec![(r2(), Nu), (-one(), Eta)],
        (XTheta, Nu) => vec![(-r2(), Theta)],
        (XTheta, Eta) => vec![(one(), Theta)],
    };
    Ok(match target {
        Target::S4 => full,
        Target::S3 => full.into_iter().filter(|(_, f)| *f != Eta).collect(),
    })
}

/// Ambient coordinates in ℝ⁵ of each frame field at `Φ(γ, θ)`, evaluated numerically.
pub fn frame_vector_r5(e: FrameIndex, gamma: f64, theta: f64) -> [f64; 5] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (cg, sg, ct, st) = (gamma.cos(), gamma.sin(), theta.cos(), theta.sin());
    match e {
        FrameIndex::Gamma => [-sg, cg, 0.0, 0.0, 0.0],
        FrameIndex::Theta => [0.0, 0.0, -st, ct, 0.0],
        FrameIndex::Nu => [r * cg, r * sg, -r * ct, -r * st, 0.0],
        FrameIndex::Eta => [0.5 * cg, 0.5 * sg, 0.5 * ct, 0.5 * st, -r],
    }
}

/// The Clifford torus `Φ(γ, θ) = (½cosγ, ½sinγ, ½cosθ, ½sinθ, 1/√2)`.
pub fn clifford_point(gamma: f64, theta: f64) -> [f64; 5] {
    [
        0.5 * gamma.cos(),
        0.5 * gamma.sin(),
        0.5 * theta.cos(),
        0.5 * theta.sin(),
        std::f64::consts::FRAC_1_SQRT_2,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_rejected_on_s3() {
        let e = connection_table(Direction::XGamma, FrameIndex::Eta, Target::S3);
        assert!(matches!(e, Err(Error::InvalidFrame { .. })));
    }

    #[test]
    fn frame_is_orthonormal_and_tangent() {
        for (g, t) in [(0.2, 1.3), (4.0, 2.5)] {
            let p = clifford_point(g, t);
            let fr: Vec<[f64; 5]> = Target::S4.frames().iter().map(|&e| frame_vector_r5(e, g, t)).collect();
            for (i, a) in fr.iter().enumerate() {
                let dp: f64 = a.iter().zip(&p).map(|(x, y)| x * y).sum();
                assert!(dp.abs() < 1e-14);
                for (j, b) in fr.iter().enumerate() {
                    let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((d - want).abs() < 1e-14);
                }
            }
        }
    }
}
