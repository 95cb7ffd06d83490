//! Sections of the pull-back bundles, written in the moving frame.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::QSqrt2;
use crate::torus::frame::{connection_table, Direction, FrameIndex, Target};
use crate::torus::trig::TrigPoly;

/// `V = Σ f_e V_e` with one trigonometric coefficient per frame field of the target.
#[derive(Clone, PartialEq, Eq)]
pub struct Section {
    target: Target,
    comps: Vec<TrigPoly>,
}

impl Section {
    pub fn zero(target: Target) -> Self {
        Self {
            target,
            comps: vec![TrigPoly::zero(); target.rank()],
        }
    }

    /// `f · V_e`.
    pub fn along(target: Target, e: FrameIndex, f: TrigPoly) -> Result<Self> {
        e.check(target)?;
        let mut s = Self::zero(target);
        s.comps[e.slot()] = f;
        Ok(s)
    }

    /// The frame field `V_e` itself.
    pub fn frame(target: Target, e: FrameIndex) -> Result<Self> {
        Self::along(target, e, TrigPoly::one())
    }

    /// Components in frame order γ, θ, ν (, η).
    pub fn from_components(target: Target, comps: Vec<TrigPoly>) -> Result<Self> {
        if comps.len() != target.rank() {
            return Err(Error::InvalidInput(format!(
                "{target} sections have {} components, got {}",
                target.rank(),
                comps.len()
            )));
        }
        Ok(Self { target, comps })
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn components(&self) -> &[TrigPoly] {
        &self.comps
    }

    /// Coefficient of `V_e`; zero for `V_η` on an `S3` section.
    pub fn comp(&self, e: FrameIndex) -> TrigPoly {
        self.comps.get(e.slot()).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(TrigPoly::is_zero)
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        self.map(|f| f.scale(c))
    }

    /// Pointwise product with a function.
    pub fn mul_fn(&self, g: &TrigPoly) -> Self {
        self.map(|f| f * g)
    }

    fn map(&self, op: impl Fn(&TrigPoly) -> TrigPoly) -> Self {
        Self {
            target: self.target,
            comps: self.comps.iter().map(op).collect(),
        }
    }

    fn same_target(&self, other: &Section) -> Result<()> {
        if self.target != other.target {
            return Err(Error::TargetMismatch {
                left: self.target.name(),
                right: other.target.name(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Section) -> Result<Section> {
        self.same_target(other)?;
        Ok(Self {
            target: self.target,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    /// Pointwise metric pairing `⟨V, W⟩`, a function on the torus.
    pub fn inner(&self, other: &Section) -> Result<TrigPoly> {
        self.same_target(other)?;
        Ok(self
            .comps
            .iter()
            .zip(&other.comps)
            .fold(TrigPoly::zero(), |acc, (a, b)| &acc + &(a * b)))
    }

    /// Tangential part `V^⊤ = ⟨V, V_γ⟩V_γ + ⟨V, V_θ⟩V_θ`.
    pub fn tangent_part(&self) -> Section {
        let mut out = Section::zero(self.target);
        out.comps[0] = self.comps[0].clone();
        out.comps[1] = self.comps[1].clone();
        out
    }

    /// Drops to the `S3` bundle; fails if a `V_η` component is present.
    pub fn to_s3(&self) -> Result<Section> {
        match self.target {
            Target::S3 => Ok(self.clone()),
            Target::S4 => {
                if !self.comps[3].is_zero() {
                    return Err(Error::InvalidInput(
                        "section has a V_eta component and does not lie in the S3 bundle".into(),
                    ));
                }
                Ok(Section {
                    target: Target::S3,
                    comps: self.comps[..3].to_vec(),
                })
            }
        }
    }

    /// Pushes an `S3` section forward into the `S4` bundle.
    pub fn to_s4(&self) -> Section {
        let mut comps = self.comps.clone();
        comps.resize(4, TrigPoly::zero());
        Section {
            target: Target::S4,
            comps,
        }
    }

    /// Largest frequency in any component.
    pub fn max_frequency(&self) -> u32 {
        self.comps.iter().map(TrigPoly::max_frequency).max().unwrap_or(0)
    }
}

impl<'a> Add<&'a Section> for &'a Section {
    type Output = Section;
    /// Panics on mismatched targets; use [`Section::try_add`] for untrusted input.
    fn add(self, rhs: &Section) -> Section {
        self.try_add(rhs).expect("adding sections of different bundles")
    }
}

impl<'a> Sub<&'a Section> for &'a Section {
    type Output = Section;
    fn sub(self, rhs: &Section) -> Section {
        self + &(-rhs)
    }
}

impl Neg for &Section {
    type Output = Section;
    fn neg(self) -> Section {
        self.map(|f| -f)
    }
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .target
            .frames()
            .iter()
            .zip(&self.comps)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| format!("[{c}]{}", e.name()))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `X f` for the orthonormal domain fields `X_γ = 2∂_γ`, `X_θ = 2∂_θ`.
pub fn directional(x: Direction, f: &TrigPoly) -> TrigPoly {
    let two = QSqrt2::from_int(2);
    match x {
        Direction::XGamma => f.d_gamma().scale(&two),
        Direction::XTheta => f.d_theta().scale(&two),
    }
}

/// `∇_X V_e` as a section.
pub fn frame_connection(x: Direction, e: FrameIndex, target: Target) -> Result<Section> {
    let mut out = Section::zero(target);
    for (c, f) in connection_table(x, e, target)? {
        out.comps[f.slot()] = TrigPoly::constant(c);
    }
    Ok(out)
}

/// Pull-back covariant derivative by the Leibniz rule
/// `∇_X(f V_e) = (Xf) V_e + f ∇_X V_e`.
pub fn covariant_derivative(x: Direction, v: &Section) -> Section {
    let target = v.target;
    let mut out = Section::zero(target);
    for (&e, f) in target.frames().iter().zip(&v.comps) {
        if f.is_zero() {
            continue;
        }
        out.comps[e.slot()] = &out.comps[e.slot()] + &directional(x, f);
        for (c, g) in connection_table(x, e, target).expect("frame belongs to target") {
            let slot = g.slot();
            out.comps[slot] = &out.comps[slot] + &f.scale(&c);
        }
    }
    out
}

/// Rough Laplacian `Δ̄V = −(∇_{X_γ}∇_{X_γ} + ∇_{X_θ}∇_{X_θ})V`.
///
/// `X_γ, X_θ` are parallel on the flat torus, so no `∇_{∇_{e_i}e_i}` term appears.
pub fn rough_laplacian(v: &Section) -> Section {
    let gg = covariant_derivative(Direction::XGamma, &covariant_derivative(Direction::XGamma, v));
    let tt = covariant_derivative(Direction::XTheta, &covariant_derivative(Direction::XTheta, v));
    -&(&gg + &tt)
}

/// `(1/π²) ∫_𝕋 ⟨V, W⟩ dV`, exact.
pub fn l2_inner(v: &Section, w: &Section) -> Result<QSqrt2> {
    Ok(v.inner(w)?.mean())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::trig::Kind;
    use FrameIndex::*;

    fn q(n: i64) -> QSqrt2 {
        QSqrt2::from_int(n)
    }

    fn fv(e: FrameIndex, f: &TrigPoly) -> Section {
        Section::along(Target::S4, e, f.clone()).unwrap()
    }

    #[test]
    fn frame_laplacians() {
        for (e, k) in [(Gamma, 3), (Theta, 3), (Nu, 4), (Eta, 2)] {
            let v = Section::frame(Target::S4, e).unwrap();
            assert_eq!(rough_laplacian(&v), v.scale(&q(k)), "{e:?}");
        }
    }

    #[test]
    fn connection_examples() {
        let s = frame_connection(Direction::XGamma, Nu, Target::S4).unwrap();
        assert_eq!(s, Section::frame(Target::S4, Gamma).unwrap().scale(&QSqrt2::sqrt2()));
        assert!(frame_connection(Direction::XTheta, Gamma, Target::S4).unwrap().is_zero());
        let s3 = frame_connection(Direction::XGamma, Gamma, Target::S3).unwrap();
        assert_eq!(s3, Section::frame(Target::S3, Nu).unwrap().scale(&-QSqrt2::sqrt2()));
    }

    #[test]
    fn leibniz_example() {
        // ∇_{X_γ}(cos γ V_η) = −2 sin γ V_η + cos γ V_γ
        let v = fv(Eta, &TrigPoly::cos_g(1));
        let want = &fv(Eta, &TrigPoly::sin_g(1).scale(&q(-2))) + &fv(Gamma, &TrigPoly::cos_g(1));
        assert_eq!(covariant_derivative(Direction::XGamma, &v), want);
    }

    #[test]
    fn rough_laplacian_on_eigenfunctions() {
        let r2 = QSqrt2::sqrt2();
        for (kind, m, n) in [(Kind::Cc, 1, 0), (Kind::Sc, 2, 1), (Kind::Ss, 1, 3), (Kind::Cs, 0, 2)] {
            let f = TrigPoly::basis(kind, m, n);
            let lam = f.laplace_eigenvalue().unwrap();
            let (fg, ft) = (f.d_gamma(), f.d_theta());
            let got = rough_laplacian(&fv(Gamma, &f));
            let want = &(&fv(Gamma, &f.scale(&q(lam + 3))) + &fv(Nu, &fg.scale(&(&q(4) * &r2))))
                + &fv(Eta, &fg.scale(&q(4)));
            assert_eq!(got, want);
            let got = rough_laplacian(&fv(Nu, &f));
            let want = &(&fv(Gamma, &fg.scale(&(&q(-4) * &r2))) + &fv(Theta, &ft.scale(&(&q(4) * &r2))))
                + &fv(Nu, &f.scale(&q(lam + 4)));
            assert_eq!(got, want);
            let got = rough_laplacian(&fv(Eta, &f));
            let want = &(&fv(Gamma, &fg.scale(&q(-4))) + &fv(Theta, &ft.scale(&q(-4))))
                + &fv(Eta, &f.scale(&q(lam + 2)));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn pairings() {
        let eta = Section::frame(Target::S4, Eta).unwrap();
        assert_eq!(l2_inner(&eta, &eta).unwrap(), q(1));
        let v = fv(Gamma, &TrigPoly::cos_g(1));
        assert_eq!(l2_inner(&v, &v).unwrap(), QSqrt2::frac(1, 2));
        let s3 = Section::frame(Target::S3, Nu).unwrap();
        assert!(matches!(l2_inner(&eta, &s3), Err(Error::TargetMismatch { .. })));
    }

    #[test]
    fn s3_round_trip() {
        let v = fv(Nu, &TrigPoly::cos_t(1));
        assert_eq!(v.to_s3().unwrap().to_s4(), v);
        assert!(Section::frame(Target::S4, Eta).unwrap().to_s3().is_err());
        assert!(Section::frame(Target::S3, Eta).is_err());
    }
}
