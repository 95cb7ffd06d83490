//! Kernel of `I₂`: restrictions of the ambient Killing fields of `S⁴` together with `V_ν`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{QSqrt2, SymMatrix};
use crate::operators::{i2_apply, i2_projected_apply};
use crate::torus::{FrameIndex, Section, Target, TrigPoly};

/// One of the ten sections `V_i = Z_i ∘ Φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct KillingSection {
    pub id: usize,
    pub frame_expr: Section,
}

/// Each `Z_i` is the rotation `y ↦ A y` with `A = E_ba − E_ab`: component `a` is
/// `−y_b`, component `b` is `+y_a` (0-based coordinates of ℝ⁵).
const GENERATORS: [(usize, usize); 10] = [
    (0, 1),
    (2, 3),
    (0, 3),
    (1, 2),
    (0, 2),
    (1, 3),
    (1, 4),
    (0, 4),
    (3, 4),
    (2, 4),
];

fn half() -> QSqrt2 {
    QSqrt2::frac(1, 2)
}

fn inv_sqrt2() -> QSqrt2 {
    QSqrt2::from_parts(0, 1, 1, 2)
}

type Vec5 = [TrigPoly; 5];

/// `Φ(γ, θ) = (½cosγ, ½sinγ, ½cosθ, ½sinθ, 1/√2)` with trigonometric coordinates.
fn phi() -> Vec5 {
    let h = half();
    [
        TrigPoly::cos_g(1).scale(&h),
        TrigPoly::sin_g(1).scale(&h),
        TrigPoly::cos_t(1).scale(&h),
        TrigPoly::sin_t(1).scale(&h),
        TrigPoly::constant(inv_sqrt2()),
    ]
}

/// Ambient coordinates of the frame fields at `Φ(γ, θ)`.
fn frame_r5(e: FrameIndex) -> Vec5 {
    let r = inv_sqrt2();
    let h = half();
    let z = TrigPoly::zero;
    let (cg, sg, ct, st) = (TrigPoly::cos_g(1), TrigPoly::sin_g(1), TrigPoly::cos_t(1), TrigPoly::sin_t(1));
    match e {
        FrameIndex::Gamma => [-&sg, cg, z(), z(), z()],
        FrameIndex::Theta => [z(), z(), -&st, ct, z()],
        FrameIndex::Nu => [cg.scale(&r), sg.scale(&r), ct.scale(&-&r), st.scale(&-&r), z()],
        FrameIndex::Eta => [cg.scale(&h), sg.scale(&h), ct.scale(&h), st.scale(&h), TrigPoly::constant(-&r)],
    }
}

fn dot(u: &Vec5, v: &Vec5) -> TrigPoly {
    u.iter().zip(v).fold(TrigPoly::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// Re-expresses an ambient vector field along `Φ` in the orthonormal frame.
///
/// The frame together with `Φ` is orthonormal in ℝ⁵, so the inverse frame is the
/// transpose. Fails unless the vector is tangent to `S⁴` and the reconstruction
/// from frame coefficients is exact.
pub fn ambient_to_frame(w: &Vec5) -> Result<Section> {
    if !dot(w, &phi()).is_zero() {
        return Err(Error::Inconsistency("ambient field is not tangent to S4 along the torus".into()));
    }
    let comps: Vec<TrigPoly> = Target::S4.frames().iter().map(|&e| dot(w, &frame_r5(e))).collect();
    let mut rebuilt: Vec5 = Default::default();
    for (&e, c) in Target::S4.frames().iter().zip(&comps) {
        for (slot, x) in rebuilt.iter_mut().zip(frame_r5(e)) {
            *slot = &*slot + &(c * &x);
        }
    }
    if rebuilt != *w {
        return Err(Error::Inconsistency("frame re-expression does not reproduce the ambient field".into()));
    }
    Section::from_components(Target::S4, comps)
}

/// `Z_i(Φ(γ, θ))` re-expressed in the frame, `i = 1..10`.
pub fn killing_from_generator(id: usize) -> Result<Section> {
    let &(a, b) = GENERATORS
        .get(id.wrapping_sub(1))
        .ok_or_else(|| Error::InvalidInput(format!("Killing section index must be 1..10, got {id}")))?;
    let y = phi();
    let mut w: Vec5 = Default::default();
    w[a] = -&y[b];
    w[b] = y[a].clone();
    ambient_to_frame(&w)
}

/// The displayed frame expansions of `V_1..V_10`.
pub fn killing_expansion(id: usize) -> Result<Section> {
    use FrameIndex::*;
    let h = half();
    let r = inv_sqrt2();
    let neg = |c: &QSqrt2| -c;
    let (cg, sg, ct, st) = (TrigPoly::cos_g(1), TrigPoly::sin_g(1), TrigPoly::cos_t(1), TrigPoly::sin_t(1));
    let terms: Vec<(QSqrt2, TrigPoly, FrameIndex)> = match id {
        1 => vec![(h.clone(), TrigPoly::one(), Gamma)],
        2 => vec![(h.clone(), TrigPoly::one(), Theta)],
        3 => vec![(h.clone(), &sg * &st, Gamma), (h.clone(), &cg * &ct, Theta), (neg(&r), &cg * &st, Nu)],
        4 => vec![(neg(&h), &cg * &ct, Gamma), (neg(&h), &sg * &st, Theta), (neg(&r), &sg * &ct, Nu)],
        5 => vec![(h.clone(), &sg * &ct, Gamma), (neg(&h), &cg * &st, Theta), (neg(&r), &cg * &ct, Nu)],
        6 => vec![(neg(&h), &cg * &st, Gamma), (h.clone(), &sg * &ct, Theta), (neg(&r), &sg * &st, Nu)],
        7 => vec![(neg(&r), cg, Gamma), (neg(&h), sg.clone(), Nu), (neg(&r), sg, Eta)],
        8 => vec![(r.clone(), sg, Gamma), (neg(&h), cg.clone(), Nu), (neg(&r), cg, Eta)],
        9 => vec![(neg(&r), ct, Theta), (h.clone(), st.clone(), Nu), (neg(&r), st, Eta)],
        10 => vec![(r.clone(), st, Theta), (h.clone(), ct.clone(), Nu), (neg(&r), ct, Eta)],
        _ => return Err(Error::InvalidInput(format!("Killing section index must be 1..10, got {id}"))),
    };
    terms.into_iter().try_fold(Section::zero(Target::S4), |acc, (c, f, e)| {
        Ok(&acc + &Section::along(Target::S4, e, f.scale(&c))?)
    })
}

/// All ten Killing sections; the two constructions must agree exactly.
pub fn killing_sections() -> Result<Vec<KillingSection>> {
    (1..=10)
        .map(|id| {
            let listed = killing_expansion(id)?;
            let composed = killing_from_generator(id)?;
            if listed != composed {
                return Err(Error::Inconsistency(format!(
                    "V_{id}: listed expansion {listed} differs from Z_{id}(Φ) = {composed}"
                )));
            }
            Ok(KillingSection { id, frame_expr: listed })
        })
        .collect()
}

/// `dΦ(X)` computed from the ambient derivative `2∂Φ` and re-expressed in the frame.
pub fn differential_image(gamma: bool) -> Result<Section> {
    let two = QSqrt2::from_int(2);
    let y = phi();
    let w: Vec5 = std::array::from_fn(|i| {
        let d = if gamma { y[i].d_gamma() } else { y[i].d_theta() };
        d.scale(&two)
    });
    ambient_to_frame(&w)
}

/// Outcome of one exact check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Counterexample or value, empty when nothing needs reporting.
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    /// `V_1..V_10, V_nu` rendered in the frame.
    pub sections: Vec<(String, String)>,
    /// `(V_i, V_j)` in units of `π²`, rows in the order of `sections`.
    pub gram: Vec<Vec<QSqrt2>>,
    pub gram_rank: usize,
    pub checks: Vec<Check>,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Exact verification that `V_1..V_10` and `V_ν` span an 11-dimensional subspace of `Ker(I₂)`.
pub fn verify_kernel() -> Result<KernelReport> {
    let killing = killing_sections()?;
    let v_nu = Section::frame(Target::S4, FrameIndex::Nu)?;
    let mut named: Vec<(String, Section)> = killing
        .iter()
        .map(|k| (format!("V{}", k.id), k.frame_expr.clone()))
        .collect();
    named.push(("V_nu".into(), v_nu));

    let mut checks = Vec::new();
    for (name, v) in &named {
        let img = i2_apply(v)?;
        checks.push(Check::new(
            format!("I2({name}) = 0"),
            img.is_zero(),
            if img.is_zero() { String::new() } else { img.to_string() },
        ));
    }

    let n = named.len();
    let mut gram = vec![vec![QSqrt2::from_int(0); n]; n];
    let mut off_diag = Vec::new();
    for i in 0..n {
        for j in i..n {
            let g = crate::torus::l2_inner(&named[i].1, &named[j].1)?;
            if i != j && !num_traits::Zero::is_zero(&g) {
                off_diag.push(format!("({}, {}) = {g}", named[i].0, named[j].0));
            }
            gram[i][j] = g.clone();
            gram[j][i] = g;
        }
    }
    checks.push(Check::new("pairwise L2-orthogonality", off_diag.is_empty(), off_diag.join("; ")));
    let gram_rank = SymMatrix::from_rows(gram.clone())?.rank();
    checks.push(Check::new("Gram rank = 11", gram_rank == 11, format!("rank {gram_rank}")));

    let two = QSqrt2::from_int(2);
    for (gamma, idx, label) in [(true, 0, "dPhi(X_gamma) = 2 V1"), (false, 1, "dPhi(X_theta) = 2 V2")] {
        let d = differential_image(gamma)?;
        let want = killing[idx].frame_expr.scale(&two);
        checks.push(Check::new(label, d == want, if d == want { String::new() } else { d.to_string() }));
    }

    // V_nu and V1..V6 lie in the S3 bundle and span the kernel of the projected operator.
    for (name, v) in named.iter().filter(|(n, _)| !matches!(n.as_str(), "V7" | "V8" | "V9" | "V10")) {
        let ok = match v.to_s3() {
            Ok(s) => i2_projected_apply(&s)?.is_zero(),
            Err(_) => false,
        };
        checks.push(Check::new(format!("{name} tangent to S3 and killed by I2Projected"), ok, ""));
    }
    for (name, v) in &named[6..10] {
        let eta = !v.comp(FrameIndex::Eta).is_zero();
        checks.push(Check::new(format!("{name} has a V_eta component"), eta, ""));
    }

    Ok(KernelReport {
        sections: named.iter().map(|(n, v)| (n.clone(), v.to_string())).collect(),
        gram,
        gram_rank,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_examples() {
        let v1 = killing_expansion(1).unwrap();
        assert_eq!(v1, Section::frame(Target::S4, FrameIndex::Gamma).unwrap().scale(&half()));
        let v7 = killing_from_generator(7).unwrap();
        assert_eq!(v7.comp(FrameIndex::Gamma), TrigPoly::cos_g(1).scale(&-&inv_sqrt2()));
        assert_eq!(v7.comp(FrameIndex::Nu), TrigPoly::sin_g(1).scale(&QSqrt2::frac(-1, 2)));
        assert_eq!(v7.comp(FrameIndex::Eta), TrigPoly::sin_g(1).scale(&-&inv_sqrt2()));
    }

    #[test]
    fn constructions_agree() {
        assert_eq!(killing_sections().unwrap().len(), 10);
    }

    #[test]
    fn bad_index() {
        assert!(matches!(killing_expansion(11), Err(Error::InvalidInput(_))));
        assert!(matches!(killing_from_generator(0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn non_tangent_field_is_rejected() {
        let w = phi();
        assert!(matches!(ambient_to_frame(&w), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn kernel_report() {
        let r = verify_kernel().unwrap();
        let failed: Vec<_> = r.failures().collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(r.gram_rank, 11);
        assert_eq!(r.gram[0][0], QSqrt2::frac(1, 4));
        assert_eq!(r.gram[10][10], QSqrt2::from_int(1));
    }
}
