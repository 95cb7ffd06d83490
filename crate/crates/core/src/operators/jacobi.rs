//! Operators along the minimal torus `φ: 𝕋 → S³(1/√2)`: the harmonic Jacobi
//! operator `J`, the p-energy operator `J_p`, and the projection of `I₂`.

use crate::error::{Error, Result};
use crate::exact::QSqrt2;
use crate::operators::i2::{build, eigenvalue_of, pairing_with_differential, tension_field};
use crate::torus::{directional, l2_inner, rough_laplacian, Direction, FrameIndex, Section, Target, TrigPoly};

/// Dimension of the domain torus.
const M: i64 = 2;

fn require_s3(v: &Section) -> Result<()> {
    if v.target() != Target::S3 {
        return Err(Error::TargetMismatch {
            left: v.target().name(),
            right: Target::S3.name(),
        });
    }
    Ok(())
}

/// `J(V) = Δ̄V − 2mV + mV^⊤` with `m = 2`.
pub fn jacobi_apply(v: &Section) -> Result<Section> {
    require_s3(v)?;
    let lap = rough_laplacian(v);
    Ok(&(&lap - &v.scale(&QSqrt2::from_int(2 * M))) + &v.tangent_part().scale(&QSqrt2::from_int(M)))
}

/// `h = ⟨dV, dφ⟩`, the divergence of the tangential part of `V`.
pub fn divergence_density(v: &Section) -> Result<TrigPoly> {
    require_s3(v)?;
    Ok(pairing_with_differential(v))
}

/// `d*(h dφ) = −X_γ(h)V_γ − X_θ(h)V_θ − h τ(φ)`.
pub fn dstar_term(v: &Section) -> Result<Section> {
    let h = divergence_density(v)?;
    let tau = tension_field(Target::S3);
    let mut out = -&tau.mul_fn(&h);
    for x in Direction::BOTH {
        let s = Section::along(Target::S3, x.image(), -&directional(x, &h))?;
        out = &out + &s;
    }
    Ok(out)
}

/// The exact coefficients `((p−2)·2^{(p−4)/2}, 2^{(p−2)/2})` of `J_p`.
pub fn jp_coefficients(p: f64) -> Result<(QSqrt2, QSqrt2)> {
    if !(p >= 1.0) {
        return Err(Error::InvalidInput(format!("p must be at least 1, got {p}")));
    }
    if p.fract() != 0.0 || p > 1.0e6 {
        return Err(Error::ExactModeUnavailable(p));
    }
    let p = p as i64;
    let a = &QSqrt2::from_int(p - 2) * &QSqrt2::pow2_half(p - 4);
    Ok((a, QSqrt2::pow2_half(p - 2)))
}

/// Floating-point counterpart of [`jp_coefficients`], valid for every real `p ≥ 1`.
pub fn jp_coefficients_f64(p: f64) -> Result<(f64, f64)> {
    if !(p >= 1.0) {
        return Err(Error::InvalidInput(format!("p must be at least 1, got {p}")));
    }
    Ok(((p - 2.0) * 2f64.powf((p - 4.0) / 2.0), 2f64.powf((p - 2.0) / 2.0)))
}

/// `J_p(V) = (p−2)m^{(p−4)/2} d*(⟨dV,dφ⟩dφ) + m^{(p−2)/2} J(V)`, exact for integer `p`.
pub fn jp_apply(p: f64, v: &Section) -> Result<Section> {
    let (a, b) = jp_coefficients(p)?;
    Ok(&dstar_term(v)?.scale(&a) + &jacobi_apply(v)?.scale(&b))
}

/// `I₂^{Φ,π}(V) = J²V + 2mJV + 4 d*(⟨dV,dφ⟩dφ)`.
pub fn i2_projected_apply(v: &Section) -> Result<Section> {
    let jv = jacobi_apply(v)?;
    let jjv = jacobi_apply(&jv)?;
    Ok(&(&jjv + &jv.scale(&QSqrt2::from_int(2 * M))) + &dstar_term(v)?.scale(&QSqrt2::from_int(4)))
}

/// `(d*(h dφ), V) = ∫ h²`, each side computed separately; they must agree exactly.
pub fn divergence_pairing(v: &Section) -> Result<QSqrt2> {
    let left = l2_inner(&dstar_term(v)?, v)?;
    let h = divergence_density(v)?;
    let right = (&h * &h).mean();
    if left != right {
        return Err(Error::Inconsistency(format!(
            "divergence identity fails: (d* term, V) = {left} but ∫h² = {right}"
        )));
    }
    Ok(right)
}

/// `J(f V_e)` from the displayed closed forms, for `Δf = λf`.
pub fn jacobi_closed_form(f: &TrigPoly, e: FrameIndex) -> Result<Section> {
    use FrameIndex::*;
    e.check(Target::S3)?;
    let lam = QSqrt2::from_int(eigenvalue_of(f)?);
    let c = &QSqrt2::from_int(4) * &QSqrt2::sqrt2();
    let (fg, ft) = (f.d_gamma(), f.d_theta());
    let parts = match e {
        Gamma => vec![(Gamma, f.scale(&lam)), (Nu, fg.scale(&c))],
        Theta => vec![(Theta, f.scale(&lam)), (Nu, ft.scale(&-&c))],
        _ => vec![(Gamma, fg.scale(&-&c)), (Theta, ft.scale(&c)), (Nu, f.scale(&lam))],
    };
    Ok(build(Target::S3, parts))
}

/// `J_p(f V_e)` from the displayed closed forms, for `Δf = λf` and integer `p`.
pub fn jp_closed_form(p: f64, f: &TrigPoly, e: FrameIndex) -> Result<Section> {
    use FrameIndex::*;
    let (a, b) = jp_coefficients(p)?;
    let j = jacobi_closed_form(f, e)?.scale(&b);
    let four_a = &QSqrt2::from_int(-4) * &a;
    let (fg, ft) = (f.d_gamma(), f.d_theta());
    let extra = match e {
        Gamma => build(Target::S3, vec![(Gamma, fg.d_gamma().scale(&four_a)), (Theta, fg.d_theta().scale(&four_a))]),
        Theta => build(Target::S3, vec![(Gamma, fg.d_theta().scale(&four_a)), (Theta, ft.d_theta().scale(&four_a))]),
        _ => Section::zero(Target::S3),
    };
    Ok(&j + &extra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Kind;
    use num_traits::Zero;
    use FrameIndex::*;

    fn s3(e: FrameIndex, f: TrigPoly) -> Section {
        Section::along(Target::S3, e, f).unwrap()
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_apply(&Section::frame(Target::S3, Nu).unwrap()).unwrap().is_zero());
        let v = s3(Gamma, TrigPoly::cos_g(1));
        let c = &QSqrt2::from_int(-4) * &QSqrt2::sqrt2();
        let want = &v.scale(&QSqrt2::from_int(4)) + &s3(Nu, TrigPoly::sin_g(1).scale(&c));
        assert_eq!(jacobi_apply(&v).unwrap(), want);
    }

    #[test]
    fn w1_is_an_eigensection() {
        let w1 = &s3(Gamma, TrigPoly::cos_g(1)) + &s3(Nu, TrigPoly::sin_g(1));
        let mu = QSqrt2::from_parts(4, 1, -4, 1);
        assert_eq!(jacobi_apply(&w1).unwrap(), w1.scale(&mu));
    }

    #[test]
    fn jp_at_two_is_jacobi() {
        let v = &s3(Theta, TrigPoly::basis(Kind::Cs, 2, 1)) + &s3(Nu, TrigPoly::cos_g(1));
        assert_eq!(jp_apply(2.0, &v).unwrap(), jacobi_apply(&v).unwrap());
    }

    #[test]
    fn jp_requires_integer_p() {
        let v = Section::frame(Target::S3, Nu).unwrap();
        assert!(matches!(jp_apply(3.5, &v), Err(Error::ExactModeUnavailable(_))));
        assert!(matches!(jp_apply(0.5, &v), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn divergence_identity_examples() {
        assert!(divergence_pairing(&Section::frame(Target::S3, Nu).unwrap()).unwrap().is_zero());
        assert!(divergence_pairing(&Section::frame(Target::S3, Gamma).unwrap()).unwrap().is_zero());
        let v = s3(Gamma, TrigPoly::cos_g(1));
        assert_eq!(divergence_pairing(&v).unwrap(), QSqrt2::from_int(2));
    }

    #[test]
    fn projected_kills_constant_tangent() {
        let v = Section::frame(Target::S3, Gamma).unwrap().scale(&QSqrt2::from_int(3));
        assert!(i2_projected_apply(&v).unwrap().is_zero());
    }

    #[test]
    fn closed_forms_agree() {
        for kind in [Kind::Cc, Kind::Cs, Kind::Sc, Kind::Ss] {
            for (m, n) in [(0, 0), (1, 0), (0, 2), (1, 1), (2, 3)] {
                let f = TrigPoly::basis(kind, m, n);
                if f.is_zero() {
                    continue;
                }
                for e in [Gamma, Theta, Nu] {
                    let v = s3(e, f.clone());
                    assert_eq!(jacobi_apply(&v).unwrap(), jacobi_closed_form(&f, e).unwrap());
                    for p in 1..=6 {
                        let p = p as f64;
                        assert_eq!(jp_apply(p, &v).unwrap(), jp_closed_form(p, &f, e).unwrap());
                    }
                }
            }
        }
    }
}
