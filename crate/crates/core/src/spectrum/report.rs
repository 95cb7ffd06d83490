//! Index and nullity totals over all blocks up to a frequency cutoff.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::roots::{
    exact_roots_low_degree, isolate_roots, refine_root, sturm_count_open, Bound, Signature,
};
use crate::exact::{Poly, QSqrt2};
use crate::operators::OperatorKind;
use crate::spectrum::block::{block, float_signature, jp_float_matrix, BlockLabel, BASIS_ORDERING};
use crate::spectrum::factored::{check_factorisation, sign_pattern_holds};

pub const DEFAULT_CUTOFF: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Exact characteristic polynomials and certified root counts.
    Exact,
    /// Floating-point eigensolve with the relative zero threshold.
    Float,
}

/// Per-block outcome as it appears in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub m: u32,
    pub n: u32,
    pub dim: usize,
    pub signature: Signature,
    /// The assembled characteristic polynomial matched a closed-form factorisation.
    pub factorisation_checked: bool,
    /// Alternating coefficient pattern of the cubic/quartic factor, where one is claimed.
    pub sign_pattern: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub op: OperatorKind,
    pub cutoff: u32,
    pub mode: Mode,
    pub basis_ordering: String,
    pub per_block: Vec<BlockSummary>,
    pub index: usize,
    pub nullity: usize,
    pub tail_certified: bool,
    pub tail_note: String,
}

/// `(0,0)`, then `(m,0)`, `(0,n)`, then `(m,n)` row by row, for `1 ≤ m, n ≤ cutoff`.
pub fn enumerate_blocks(cutoff: u32) -> Vec<(u32, u32)> {
    let mut out = vec![(0, 0)];
    out.extend((1..=cutoff).map(|m| (m, 0)));
    out.extend((1..=cutoff).map(|n| (0, n)));
    for m in 1..=cutoff {
        out.extend((1..=cutoff).map(|n| (m, n)));
    }
    out
}

fn summarize(label: &BlockLabel) -> Result<BlockSummary> {
    let (signature, factorisation_checked) = match label.op {
        OperatorKind::Jp { p } if p.fract() != 0.0 => {
            (float_signature(&jp_float_matrix(p, label.m, label.n)?), false)
        }
        _ => {
            let b = block(label)?;
            let checked = check_factorisation(&b)?;
            let fs = float_signature(&b.matrix.to_f64());
            if fs != b.signature {
                return Err(Error::Inconsistency(format!(
                    "{label}: exact signature {:?} but float eigensolve gives {fs:?}",
                    b.signature
                )));
            }
            (b.signature, checked)
        }
    };
    Ok(BlockSummary {
        m: label.m,
        n: label.n,
        dim: label.dim(),
        signature,
        factorisation_checked,
        sign_pattern: sign_pattern_holds(label),
    })
}

/// Sums block signatures for one operator over every block up to `cutoff`.
pub fn index_nullity(op: OperatorKind, cutoff: u32) -> Result<SpectrumReport> {
    if cutoff < 2 {
        return Err(Error::InvalidInput(format!("cutoff must be at least 2, got {cutoff}")));
    }
    if let OperatorKind::Jp { p } = op {
        if !(p >= 1.0) {
            return Err(Error::InvalidInput(format!("p must be at least 1, got {p}")));
        }
    }
    let per_block = enumerate_blocks(cutoff)
        .into_par_iter()
        .map(|(m, n)| summarize(&BlockLabel::new(m, n, op)))
        .collect::<Result<Vec<_>>>()?;
    let total = per_block
        .iter()
        .fold(Signature::default(), |acc, b| acc + b.signature);

    let tail: Vec<&BlockSummary> = per_block.iter().filter(|b| b.m.max(b.n) >= 2).collect();
    let positive = tail.iter().all(|b| b.signature.neg == 0 && b.signature.zero == 0);
    let pattern = tail.iter().all(|b| b.sign_pattern != Some(false));
    let claims_pattern = tail.iter().any(|b| b.sign_pattern.is_some());
    let mut tail_note = format!(
        "verified up to cutoff {cutoff} only: {} of {} blocks with max(m,n) >= 2 have strictly positive spectrum",
        tail.iter().filter(|b| b.signature.neg == 0 && b.signature.zero == 0).count(),
        tail.len()
    );
    if claims_pattern {
        tail_note.push_str(if pattern {
            "; coefficient sign pattern observed on every enumerated non-exceptional block"
        } else {
            "; coefficient sign pattern FAILS on some enumerated block"
        });
    } else {
        tail_note.push_str("; no coefficient sign pattern is claimed for this operator");
    }
    tail_note.push_str("; nothing is asserted beyond the cutoff");

    Ok(SpectrumReport {
        op,
        cutoff,
        mode: if op.is_exact() { Mode::Exact } else { Mode::Float },
        basis_ordering: BASIS_ORDERING.to_string(),
        per_block,
        index: total.neg,
        nullity: total.zero,
        tail_certified: positive && pattern,
        tail_note,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub mode: Mode,
    pub index: usize,
    pub nullity: usize,
}

/// Index and nullity of `J_p` for each `p`, exact where `p` is an integer.
pub fn pharmonic_sweep(p_grid: &[f64], cutoff: u32) -> Result<Vec<SweepRow>> {
    if let Some(p) = p_grid.iter().find(|p| !(**p >= 1.0)) {
        return Err(Error::InvalidInput(format!("p must be at least 1, got {p}")));
    }
    p_grid
        .iter()
        .map(|&p| {
            let r = index_nullity(OperatorKind::Jp { p }, cutoff)?;
            Ok(SweepRow {
                p,
                mode: r.mode,
                index: r.index,
                nullity: r.nullity,
            })
        })
        .collect()
}

/// An eigenvalue in the forbidden interval, exact when it lies in `Q(√2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub block: Option<(u32, u32)>,
    pub exact: Option<QSqrt2>,
    pub lower: QSqrt2,
    pub upper: QSqrt2,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Composition {
    Holds,
    Fails { witness: Witness },
}

/// Looks for a root of any `p` in the open interval `(−2m, 0)`.
///
/// Each polynomial is tagged with the block it came from, if any.
pub fn composition_condition(polys: &[(Option<(u32, u32)>, Poly)], m_dim: u32) -> Result<Composition> {
    let lo = QSqrt2::from_int(-2 * m_dim as i64);
    let hi = QSqrt2::from_int(0);
    for (tag, p) in polys {
        if sturm_count_open(p, &Bound::At(lo.clone()), &Bound::At(hi.clone()))? == 0 {
            continue;
        }
        // Strip endpoint roots so isolation starts from clean endpoints.
        let mut q = p.clone();
        for r in [&lo, &hi] {
            let lin = Poly::linear_root(r);
            while q.eval(r) == hi {
                q = q.exact_div(&lin)?;
            }
        }
        let in_range = |x: &QSqrt2| x > &lo && x < &hi;
        let exact = exact_roots_low_degree(&q).and_then(|rs| rs.into_iter().find(in_range));
        let witness = match exact {
            Some(x) => Witness {
                block: *tag,
                approx: x.to_f64(),
                lower: x.clone(),
                upper: x.clone(),
                exact: Some(x),
            },
            None => {
                let iv = isolate_roots(&q, &lo, &hi)?;
                let (a, b) = iv
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Inconsistency("Sturm count and isolation disagree".into()))?;
                let (a, b) = refine_root(&q, a, b, 1e-12)?;
                Witness {
                    block: *tag,
                    exact: None,
                    approx: 0.5 * (a.to_f64() + b.to_f64()),
                    lower: a,
                    upper: b,
                }
            }
        };
        return Ok(Composition::Fails { witness });
    }
    Ok(Composition::Holds)
}

/// The condition on the spectrum of `J` for the Clifford torus, blocks up to `cutoff`.
pub fn jacobi_composition_condition(cutoff: u32, m_dim: u32) -> Result<Composition> {
    let polys = enumerate_blocks(cutoff)
        .into_par_iter()
        .map(|(m, n)| {
            let b = block(&BlockLabel::new(m, n, OperatorKind::J))?;
            Ok(b.component_polys
                .into_iter()
                .map(|p| (Some((m, n)), p))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    composition_condition(&polys.into_iter().flatten().collect::<Vec<_>>(), m_dim)
}

/// Multiplicity of `r` as an eigenvalue of `op`, summed over the given blocks.
pub fn eigenvalue_multiplicity(op: OperatorKind, blocks: &[(u32, u32)], r: &QSqrt2) -> Result<usize> {
    let lin = Poly::linear_root(r);
    let zero = QSqrt2::from_int(0);
    let mut total = 0;
    for &(m, n) in blocks {
        let mut p = block(&BlockLabel::new(m, n, op))?.char_poly;
        while p.degree().unwrap_or(0) > 0 && p.eval(r) == zero {
            p = p.exact_div(&lin)?;
            total += 1;
        }
    }
    Ok(total)
}

/// `Π (x − r)` for a list of exact roots.
pub fn poly_from_roots(roots: &[QSqrt2]) -> Poly {
    roots
        .iter()
        .fold(Poly::from_ints(&[1]), |acc, r| &acc * &Poly::linear_root(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order() {
        let b = enumerate_blocks(2);
        assert_eq!(b, vec![(0, 0), (1, 0), (2, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn small_cutoff_is_rejected() {
        assert!(matches!(index_nullity(OperatorKind::J, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn hypothetical_spectra() {
        let ok = poly_from_roots(&[QSqrt2::from_int(-4), QSqrt2::from_int(0), QSqrt2::from_int(3)]);
        assert_eq!(composition_condition(&[(None, ok)], 2).unwrap(), Composition::Holds);
        assert_eq!(composition_condition(&[], 2).unwrap(), Composition::Holds);
        let bad = poly_from_roots(&[QSqrt2::from_int(-1), QSqrt2::from_int(5)]);
        let Composition::Fails { witness } = composition_condition(&[(None, bad)], 2).unwrap() else {
            panic!("expected failure")
        };
        assert_eq!(witness.exact, Some(QSqrt2::from_int(-1)));
    }

    #[test]
    fn cubic_witness_is_isolated() {
        // (x + 1)(x − 1)(x − 2): degree 3, so the witness comes from isolation.
        let p = Poly::from_ints(&[2, -1, -2, 1]);
        let Composition::Fails { witness } = composition_condition(&[(None, p)], 2).unwrap() else {
            panic!("expected failure")
        };
        assert!(witness.exact.is_none());
        assert!((witness.approx + 1.0).abs() < 1e-10);
    }

    #[test]
    fn lowest_jacobi_eigenvalue_has_multiplicity_four() {
        let mu = QSqrt2::from_parts(4, 1, -4, 1);
        assert_eq!(eigenvalue_multiplicity(OperatorKind::J, &[(1, 0), (0, 1)], &mu).unwrap(), 4);
        assert_eq!(eigenvalue_multiplicity(OperatorKind::J, &[(1, 1), (2, 0)], &mu).unwrap(), 0);
    }
}
