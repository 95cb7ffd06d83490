//! The biharmonic Jacobi operator `I₂` along `Φ: 𝕋 → S⁴`.

use crate::error::{Error, Result};
use crate::exact::QSqrt2;
use crate::torus::{
    covariant_derivative, rough_laplacian, Direction, FrameIndex, Section, Target, TrigPoly,
};

/// `τ = Σ_i ∇_{e_i} dΦ(e_i)`; the domain frame is parallel so no correction term.
pub fn tension_field(target: Target) -> Section {
    Direction::BOTH
        .iter()
        .map(|&x| {
            let dphi = Section::frame(target, x.image()).expect("tangent frame exists");
            covariant_derivative(x, &dphi)
        })
        .fold(Section::zero(target), |acc, s| &acc + &s)
}

/// `|dΦ|² = Σ_i |dΦ(e_i)|²`, constant for an isometric immersion.
pub fn energy_density(target: Target) -> QSqrt2 {
    Direction::BOTH
        .iter()
        .map(|&x| {
            let d = Section::frame(target, x.image()).expect("tangent frame exists");
            d.inner(&d).expect("same bundle").mean()
        })
        .sum()
}

/// `⟨dV, dΦ⟩ = Σ_i ⟨∇_{e_i} V, dΦ(e_i)⟩`.
pub fn pairing_with_differential(v: &Section) -> TrigPoly {
    Direction::BOTH
        .iter()
        .map(|&x| covariant_derivative(x, v).comp(x.image()))
        .fold(TrigPoly::zero(), |acc, h| &acc + &h)
}

/// `Σ_i g(e_i) dΦ(e_i)` for a function-valued 1-form `g`.
fn along_differential(v: &Section, g: impl Fn(Direction) -> TrigPoly) -> Section {
    let mut out = Section::zero(v.target());
    for x in Direction::BOTH {
        let s = Section::along(v.target(), x.image(), g(x)).expect("tangent frame exists");
        out = &out + &s;
    }
    out
}

pub const TERM_NAMES: [&str; 13] = [
    "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII",
];

/// The thirteen summands of `I₂(V)`, kept apart for per-term diagnosis.
#[derive(Debug, Clone)]
pub struct I2Terms {
    pub terms: Vec<Section>,
}

impl I2Terms {
    pub fn sum(&self) -> Section {
        let target = self.terms[0].target();
        self.terms.iter().fold(Section::zero(target), |acc, t| &acc + t)
    }

    pub fn named(&self) -> impl Iterator<Item = (&'static str, &Section)> {
        TERM_NAMES.iter().copied().zip(&self.terms)
    }
}

fn require(v: &Section, target: Target) -> Result<()> {
    if v.target() != target {
        return Err(Error::TargetMismatch {
            left: v.target().name(),
            right: target.name(),
        });
    }
    Ok(())
}

/// Each term of the general second-variation formula for the bienergy into a
/// unit sphere, specialised with the tension field and energy density
/// computed from the frame calculus.
pub fn i2_terms(v: &Section) -> Result<I2Terms> {
    require(v, Target::S4)?;
    let target = Target::S4;
    let tau = tension_field(target);
    let e = energy_density(target);
    let two = QSqrt2::from_int(2);
    let m2 = QSqrt2::from_int(-2);
    let lap = rough_laplacian(v);
    let vt = v.tangent_part();
    let dtau = |x: Direction| covariant_derivative(x, &tau);

    let t1 = rough_laplacian(&lap);
    let t2 = rough_laplacian(&(&vt - &v.scale(&e)));
    let div_tau: TrigPoly = Direction::BOTH
        .iter()
        .map(|&x| dtau(x).comp(x.image()))
        .fold(TrigPoly::zero(), |a, b| &a + &b);
    let t3 = v.mul_fn(&div_tau.scale(&two));
    let t4 = v.mul_fn(&tau.inner(&tau)?);
    let t5 = along_differential(v, |x| v.inner(&dtau(x)).expect("same bundle").scale(&m2));
    let t6 = along_differential(v, |x| {
        tau.inner(&covariant_derivative(x, v)).expect("same bundle").scale(&m2)
    });
    let t7 = -&tau.mul_fn(&tau.inner(v)?);
    let t8 = lap.tangent_part();
    let t9 = vt.tangent_part();
    let t10 = vt.scale(&(&m2 * &e));
    let t11 = tau.mul_fn(&pairing_with_differential(v).scale(&two));
    let t12 = lap.scale(&-&e);
    let t13 = v.scale(&(&e * &e));
    Ok(I2Terms {
        terms: vec![t1, t2, t3, t4, t5, t6, t7, t8, t9, t10, t11, t12, t13],
    })
}

/// `I₂(V)` for a section of `Φ⁻¹TS⁴`.
pub fn i2_apply(v: &Section) -> Result<Section> {
    Ok(i2_terms(v)?.sum())
}

pub(crate) fn eigenvalue_of(f: &TrigPoly) -> Result<i64> {
    if f.is_zero() {
        return Ok(0);
    }
    f.laplace_eigenvalue()
        .ok_or_else(|| Error::NotEigenfunction(f.to_string()))
}

pub(crate) fn build(target: Target, parts: Vec<(FrameIndex, TrigPoly)>) -> Section {
    parts.into_iter().fold(Section::zero(target), |acc, (e, f)| {
        &acc + &Section::along(target, e, f).expect("frame belongs to target")
    })
}

/// `I₂(f V_e)` from the displayed closed forms, for `Δf = λf`.
pub fn i2_closed_form(f: &TrigPoly, e: FrameIndex) -> Result<Section> {
    use FrameIndex::*;
    let lam = eigenvalue_of(f)?;
    let q = QSqrt2::from_int;
    let r2 = QSqrt2::sqrt2();
    let (fg, ft) = (f.d_gamma(), f.d_theta());
    let (fgg, fgt, ftt) = (fg.d_gamma(), fg.d_theta(), ft.d_theta());
    let c_nu = &q(8 * (2 + lam)) * &r2;
    let c16 = &q(16) * &r2;
    let cross = &ftt.scale(&c16) - &fgg.scale(&c16);
    let parts = match e {
        Gamma => vec![
            (Gamma, &f.scale(&q(lam * (4 + lam))) - &fgg.scale(&q(48))),
            (Theta, fgt.scale(&q(16))),
            (Nu, fg.scale(&c_nu)),
            (Eta, fg.scale(&q(8 * lam))),
        ],
        Theta => vec![
            (Gamma, fgt.scale(&q(16))),
            (Theta, &f.scale(&q(lam * (4 + lam))) - &ftt.scale(&q(48))),
            (Nu, ft.scale(&-&c_nu)),
            (Eta, ft.scale(&q(8 * lam))),
        ],
        Nu => vec![
            (Gamma, fg.scale(&-&c_nu)),
            (Theta, ft.scale(&c_nu)),
            (Nu, f.scale(&q(lam * (12 + lam)))),
            (Eta, cross),
        ],
        Eta => vec![
            (Gamma, fg.scale(&q(-8 * lam))),
            (Theta, ft.scale(&q(-8 * lam))),
            (Nu, cross),
            (Eta, f.scale(&q(lam * lam + 4 * lam - 16))),
        ],
    };
    Ok(build(Target::S4, parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Kind;
    use FrameIndex::*;

    #[test]
    fn specialisation_constants() {
        let tau = tension_field(Target::S4);
        assert_eq!(tau, Section::frame(Target::S4, Eta).unwrap().scale(&QSqrt2::from_int(-2)));
        assert_eq!(energy_density(Target::S4), QSqrt2::from_int(2));
        assert!(tension_field(Target::S3).is_zero());
    }

    #[test]
    fn frame_eigenvalues() {
        let eta = Section::frame(Target::S4, Eta).unwrap();
        assert_eq!(i2_apply(&eta).unwrap(), eta.scale(&QSqrt2::from_int(-16)));
        for e in [Gamma, Theta, Nu] {
            assert!(i2_apply(&Section::frame(Target::S4, e).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn per_term_values_for_cos_gamma() {
        // For V = f V_γ the terms III..VII, IX, X, XIII reduce to multiples of f V_γ.
        let f = TrigPoly::cos_g(1);
        let v = Section::along(Target::S4, Gamma, f.clone()).unwrap();
        let t = i2_terms(&v).unwrap();
        let fv = |k: i64| v.scale(&QSqrt2::from_int(k));
        assert_eq!(t.terms[2], fv(-8));
        assert_eq!(t.terms[3], fv(4));
        assert_eq!(t.terms[4], fv(4));
        assert_eq!(t.terms[5], fv(-4));
        assert!(t.terms[6].is_zero());
        assert_eq!(t.terms[7], fv(7));
        assert_eq!(t.terms[8], fv(1));
        assert_eq!(t.terms[9], fv(-4));
        let xi = Section::along(Target::S4, Eta, f.d_gamma().scale(&QSqrt2::from_int(-8))).unwrap();
        assert_eq!(t.terms[10], xi);
        assert_eq!(t.terms[12], fv(4));
    }

    #[test]
    fn closed_form_agrees_on_low_modes() {
        for kind in [Kind::Cc, Kind::Cs, Kind::Sc, Kind::Ss] {
            for (m, n) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (3, 2)] {
                let f = TrigPoly::basis(kind, m, n);
                if f.is_zero() {
                    continue;
                }
                for e in [Gamma, Theta, Nu, Eta] {
                    let v = Section::along(Target::S4, e, f.clone()).unwrap();
                    assert_eq!(i2_apply(&v).unwrap(), i2_closed_form(&f, e).unwrap(), "{kind:?} {m} {n} {e:?}");
                }
            }
        }
    }

    #[test]
    fn closed_form_rejects_mixed_frequencies() {
        let f = &TrigPoly::cos_g(1) + &TrigPoly::cos_g(2);
        assert!(matches!(i2_closed_form(&f, Nu), Err(Error::NotEigenfunction(_))));
    }

    #[test]
    fn rejects_s3_input() {
        let v = Section::frame(Target::S3, Nu).unwrap();
        assert!(matches!(i2_apply(&v), Err(Error::TargetMismatch { .. })));
    }
}
