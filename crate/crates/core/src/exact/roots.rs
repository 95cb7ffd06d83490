//! Real-root counting for polynomials over `Q(√2)`.
//!
//! Descartes' rule of signs gives exact counts when every root is real, which
//! holds for characteristic polynomials of symmetric matrices. Every count is
//! cross-checked against a Sturm-sequence count that makes no such assumption.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::exact::qs2::QSqrt2;

/// Root counts with multiplicity: negative, zero, positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Signature {
    pub neg: usize,
    pub zero: usize,
    pub pos: usize,
}

impl Signature {
    pub fn total(&self) -> usize {
        self.neg + self.zero + self.pos
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature {
            neg: self.neg + o.neg,
            zero: self.zero + o.zero,
            pos: self.pos + o.pos,
        }
    }
}

/// An endpoint of a counting interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(QSqrt2),
    PosInf,
}

/// Sign variations among the nonzero coefficients.
pub fn sign_variations(p: &Poly) -> usize {
    let signs: Vec<Ordering> = p
        .coeffs()
        .iter()
        .map(QSqrt2::signum)
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Descartes counts, exact under the all-roots-real hypothesis.
pub fn descartes_signature(p: &Poly) -> Result<Signature> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial has no signature".into()))?;
    let zero = p.zero_root_multiplicity();
    let q = p.shift_down(zero);
    let s = Signature {
        neg: sign_variations(&q.reflect()),
        zero,
        pos: sign_variations(&q),
    };
    if s.total() != deg {
        return Err(Error::Inconsistency(format!(
            "Descartes counts {s:?} do not sum to degree {deg} of {p}; non-real roots present"
        )));
    }
    Ok(s)
}

pub fn sturm_sequence(p: &Poly) -> Result<Vec<Poly>> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(seq);
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    Ok(seq)
}

fn sign_at(p: &Poly, at: &Bound) -> Ordering {
    match at {
        Bound::At(x) => p.eval(x).signum(),
        Bound::PosInf => p.leading().map_or(Ordering::Equal, QSqrt2::signum),
        Bound::NegInf => {
            let s = p.leading().map_or(Ordering::Equal, QSqrt2::signum);
            if p.degree().unwrap_or(0) % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }
    }
}

fn variations_at(seq: &[Poly], at: &Bound) -> usize {
    let signs: Vec<Ordering> = seq
        .iter()
        .map(|p| sign_at(p, at))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots in the half-open interval `(lo, hi]`.
pub fn sturm_distinct(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let seq = sturm_sequence(p)?;
    let vl = variations_at(&seq, lo);
    let vh = variations_at(&seq, hi);
    vl.checked_sub(vh)
        .ok_or_else(|| Error::Inconsistency("Sturm variation count increased".into()))
}

/// Roots with multiplicity in the open interval `(lo, hi)`.
///
/// Endpoint roots are divided out first, then multiplicities are recovered by
/// summing distinct counts over the chain `p, gcd(p, p'), …`.
pub fn sturm_count_open(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize> {
    let mut q = p.clone();
    for b in [lo, hi] {
        if let Bound::At(x) = b {
            let lin = Poly::linear_root(x);
            while !q.is_zero() && q.eval(x).is_zero() {
                q = q.exact_div(&lin)?;
            }
        }
    }
    let mut total = 0;
    let mut cur = q;
    while cur.degree().unwrap_or(0) > 0 {
        total += sturm_distinct(&cur, lo, hi)?;
        cur = cur.gcd(&cur.derivative())?;
    }
    Ok(total)
}

/// Sturm-based signature, independent of the all-real hypothesis.
pub fn sturm_signature(p: &Poly) -> Result<Signature> {
    let zero = p.zero_root_multiplicity();
    let q = p.shift_down(zero);
    let origin = Bound::At(QSqrt2::zero());
    Ok(Signature {
        neg: sturm_count_open(&q, &Bound::NegInf, &origin)?,
        zero,
        pos: sturm_count_open(&q, &origin, &Bound::PosInf)?,
    })
}

/// Exact `(neg, zero, pos)` root counts of a polynomial whose roots are all real.
///
/// Descartes' rule gives the answer; the Sturm count must agree or the call
/// fails with [`Error::Inconsistency`].
pub fn real_root_signature(p: &Poly) -> Result<Signature> {
    let d = descartes_signature(p)?;
    let s = sturm_signature(p)?;
    if d != s {
        return Err(Error::Inconsistency(format!(
            "Descartes {d:?} disagrees with Sturm {s:?} for {p}"
        )));
    }
    Ok(d)
}

/// Disjoint open intervals, each holding exactly one distinct root of `p`
/// inside `(lo, hi)`. Endpoints must be finite and not roots.
pub fn isolate_roots(p: &Poly, lo: &QSqrt2, hi: &QSqrt2) -> Result<Vec<(QSqrt2, QSqrt2)>> {
    if p.eval(lo).is_zero() || p.eval(hi).is_zero() {
        return Err(Error::InvalidInput("isolation endpoint is a root".into()));
    }
    let sf = p.exact_div(&p.gcd(&p.derivative())?)?;
    let half = QSqrt2::frac(1, 2);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = sturm_distinct(&sf, &Bound::At(a.clone()), &Bound::At(b.clone()))?;
        match n {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mut mid = &(&a + &b) * &half;
                // Nudge off an exact root so both halves keep clean endpoints.
                let mut step = &(&b - &a) * &QSqrt2::frac(1, 7);
                while sf.eval(&mid).is_zero() {
                    mid = &mid + &step;
                    step = &step * &half;
                }
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Shrinks an isolating interval by bisection until it is narrower than `width`.
pub fn refine_root(
    p: &Poly,
    mut a: QSqrt2,
    mut b: QSqrt2,
    width: f64,
) -> Result<(QSqrt2, QSqrt2)> {
    // Bisect on the square-free part so even-multiplicity roots change sign.
    let sf = p.exact_div(&p.gcd(&p.derivative())?)?;
    let half = QSqrt2::frac(1, 2);
    let sa = sf.eval(&a).signum();
    while (&b - &a).to_f64() > width {
        let mid = &(&a + &b) * &half;
        let sm = sf.eval(&mid).signum();
        if sm == Ordering::Equal {
            return Ok((mid.clone(), mid));
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok((a, b))
}

/// Roots lying in `Q(√2)` of a polynomial of degree at most two.
pub fn exact_roots_low_degree(p: &Poly) -> Option<Vec<QSqrt2>> {
    match p.degree()? {
        0 => Some(vec![]),
        1 => {
            let r = (-&p.coeff(0)).checked_div(&p.coeff(1)).ok()?;
            Some(vec![r])
        }
        2 => {
            let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
            let disc = &(&b * &b) - &(&QSqrt2::from_int(4) * &(&a * &c));
            let s = disc.sqrt()?;
            let two_a = &QSqrt2::from_int(2) * &a;
            let r1 = (&(-&b) - &s).checked_div(&two_a).ok()?;
            let r2 = (&(-&b) + &s).checked_div(&two_a).ok()?;
            let mut v = vec![r1, r2];
            v.sort();
            Some(v)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear() {
        let s = real_root_signature(&Poly::from_ints(&[16, 1])).unwrap();
        assert_eq!(s, Signature { neg: 1, zero: 0, pos: 0 });
    }

    #[test]
    fn repeated_roots() {
        // x²(x − 1)³(x + 2)²
        let p = &(&Poly::x().pow(2) * &Poly::from_ints(&[-1, 1]).pow(3)) * &Poly::from_ints(&[2, 1]).pow(2);
        let s = real_root_signature(&p).unwrap();
        assert_eq!(s, Signature { neg: 2, zero: 2, pos: 3 });
    }

    #[test]
    fn complex_roots_are_flagged() {
        // x² + 1: Descartes gives (0, 0, 0), degree 2.
        let e = real_root_signature(&Poly::from_ints(&[1, 0, 1]));
        assert!(matches!(e, Err(Error::Inconsistency(_))));
    }

    #[test]
    fn open_interval_excludes_endpoints() {
        // (x + 4)·x·(x + 1)
        let p = &(&Poly::from_ints(&[4, 1]) * &Poly::x()) * &Poly::from_ints(&[1, 1]);
        let lo = Bound::At(QSqrt2::from_int(-4));
        let hi = Bound::At(QSqrt2::zero());
        assert_eq!(sturm_count_open(&p, &lo, &hi).unwrap(), 1);
    }

    #[test]
    fn isolation_and_refinement() {
        // x² − 8x − 16 has roots 4 ± 4√2.
        let p = Poly::from_ints(&[-16, -8, 1]);
        let iv = isolate_roots(&p, &QSqrt2::from_int(-100), &QSqrt2::from_int(100)).unwrap();
        assert_eq!(iv.len(), 2);
        let (a, b) = refine_root(&p, iv[0].0.clone(), iv[0].1.clone(), 1e-9).unwrap();
        let expect = 4.0 - 4.0 * std::f64::consts::SQRT_2;
        assert!((a.to_f64() - expect).abs() < 1e-8 && (b.to_f64() - expect).abs() < 1e-8);
        let exact = exact_roots_low_degree(&p).unwrap();
        assert_eq!(exact[0], QSqrt2::from_parts(4, 1, -4, 1));
    }
}
