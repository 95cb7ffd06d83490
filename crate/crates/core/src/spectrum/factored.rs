//! Closed-form factorisations of block characteristic polynomials, used as an
//! independent check on the assembled matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Poly, QSqrt2, Rat};
use crate::operators::OperatorKind;
use crate::spectrum::block::{Block, BlockLabel};

/// `(coefficient, a, b, symmetric)` encodes `k·(mᵃnᵇ + mᵇnᵃ)` when symmetric, else `k·mᵃnᵇ`.
type Term = (i64, u32, u32, bool);

fn eval_terms(terms: &[Term], factor: i64, m: u32, n: u32) -> BigInt {
    let m = BigInt::from(m);
    let n = BigInt::from(n);
    let mono = |a: u32, b: u32| m.pow(a) * n.pow(b);
    let sum: BigInt = terms
        .iter()
        .map(|&(k, a, b, sym)| {
            let v = if sym { mono(a, b) + mono(b, a) } else { mono(a, b) };
            BigInt::from(k) * v
        })
        .sum();
    sum * BigInt::from(factor)
}

const C0: &[Term] = &[
    (1, 16, 0, true), (8, 14, 2, true), (28, 12, 4, true), (56, 10, 6, true), (70, 8, 8, false),
    (-3, 14, 0, true), (-21, 12, 2, true), (-63, 10, 4, true), (-105, 8, 6, true),
    (16, 10, 2, true), (64, 8, 4, true), (96, 6, 6, false),
    (7, 10, 0, true), (-21, 8, 2, true), (-98, 6, 4, true), (-3, 8, 0, true),
    (12, 6, 2, true), (94, 4, 4, false), (-4, 6, 0, true), (-12, 4, 2, true),
    (2, 4, 0, true), (12, 2, 2, false),
];

const C1: &[Term] = &[
    (4, 12, 0, true), (24, 10, 2, true), (60, 8, 4, true), (80, 6, 6, false),
    (3, 10, 0, true), (15, 8, 2, true), (30, 6, 4, true), (15, 8, 0, true),
    (-36, 6, 2, true), (-102, 4, 4, false), (1, 6, 0, true), (11, 4, 2, true),
    (-15, 4, 0, true), (-46, 2, 2, false), (2, 2, 0, true),
];

const C2: &[Term] = &[
    (6, 8, 0, true), (24, 6, 2, true), (36, 4, 4, false), (15, 6, 0, true),
    (45, 4, 2, true), (14, 4, 0, true), (44, 2, 2, false), (-10, 2, 0, true),
];

const C3: &[Term] = &[(4, 4, 0, true), (8, 2, 2, false), (9, 2, 0, true), (-1, 0, 0, false)];

fn poly_from_big(coeffs: Vec<BigInt>) -> Poly {
    Poly::new(
        coeffs
            .into_iter()
            .map(|c| QSqrt2::from_rat(Rat::from_integer(c)))
            .collect(),
    )
}

/// Quartic `Q₄` whose fourth power is the `I₂` characteristic polynomial on `S^{m,n}`, `m, n ≥ 1`.
pub fn i2_quartic(m: u32, n: u32) -> Poly {
    poly_from_big(vec![
        eval_terms(C0, 65536, m, n),
        eval_terms(C1, -4096, m, n),
        eval_terms(C2, 256, m, n),
        eval_terms(C3, -16, m, n),
        BigInt::one(),
    ])
}

/// Cubic `P₃` on `S^{m,0}`: the `I₂` characteristic polynomial is `(x − 16(m²+m⁴))² P₃²`.
pub fn i2_cubic(m: u32) -> Poly {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let p = |e: u32| m.pow(e);
    let a0 = BigInt::from(-4096) * &m2 * (&m - 1) * (&m + 1)
        * (p(8) - 3 * p(6) + p(4) + 4 * p(2) - 2);
    let a1 = BigInt::from(256) * &m2 * (3 * p(6) + 4 * p(4) + 7 * p(2) - 9);
    let a2 = BigInt::from(-16) * (3 * p(4) + 8 * p(2) - 1);
    poly_from_big(vec![a0, a1, a2, BigInt::one()])
}

fn linear(root: BigInt) -> Poly {
    poly_from_big(vec![-root, BigInt::one()])
}

/// The factored characteristic polynomial when a closed form is available.
pub fn expected_char_poly(label: &BlockLabel) -> Option<Poly> {
    let (m, n) = (label.m, label.n);
    match label.op {
        OperatorKind::I2 => Some(match (m, n) {
            (0, 0) => Poly::from_ints(&[0, 0, 0, 16, 1]),
            (k, 0) | (0, k) => {
                let k2 = BigInt::from(k).pow(2);
                let lin = linear(BigInt::from(16) * (&k2 + &k2 * &k2));
                &lin.pow(2) * &i2_cubic(k).pow(2)
            }
            _ => i2_quartic(m, n).pow(4),
        }),
        OperatorKind::J => match (m, n) {
            (0, 0) => Some(Poly::from_ints(&[0, 0, 0, 1])),
            (k, 0) | (0, k) => {
                let k2 = BigInt::from(k).pow(2);
                let quad = poly_from_big(vec![
                    BigInt::from(16) * &k2 * &k2 - BigInt::from(32) * &k2,
                    BigInt::from(-8) * &k2,
                    BigInt::one(),
                ]);
                Some(&linear(BigInt::from(4) * k2).pow(2) * &quad.pow(2))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Fails unless the assembled characteristic polynomial equals the closed form,
/// reporting the residual factor when they differ.
pub fn check_factorisation(block: &Block) -> Result<bool> {
    let Some(expected) = expected_char_poly(&block.label) else {
        return Ok(false);
    };
    if expected != block.char_poly {
        let g = expected.gcd(&block.char_poly)?;
        let residual = block.char_poly.exact_div(&g)?;
        return Err(Error::Inconsistency(format!(
            "{}: characteristic polynomial differs from the closed form; residual factor {residual}",
            block.label
        )));
    }
    Ok(true)
}

fn sign(p: &Poly, k: usize) -> i8 {
    let c = p.coeff(k);
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

/// The alternating coefficient pattern that forces every root of the cubic or
/// quartic factor to be positive; `None` where no pattern is claimed.
pub fn sign_pattern_holds(label: &BlockLabel) -> Option<bool> {
    if label.op != OperatorKind::I2 {
        return None;
    }
    match (label.m, label.n) {
        (0, 0) | (1, 0) | (0, 1) | (1, 1) => None,
        (k, 0) | (0, k) => {
            let p = i2_cubic(k);
            Some(sign(&p, 0) < 0 && sign(&p, 1) > 0 && sign(&p, 2) < 0 && sign(&p, 3) > 0)
        }
        (m, n) => {
            let q = i2_quartic(m, n);
            Some(
                sign(&q, 0) > 0
                    && sign(&q, 1) < 0
                    && sign(&q, 2) > 0
                    && sign(&q, 3) < 0
                    && sign(&q, 4) > 0,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceptional_constant_terms_vanish() {
        assert!(i2_cubic(1).coeff(0).is_zero());
        assert!(i2_quartic(1, 1).coeff(0).is_zero());
        assert!(!i2_quartic(2, 1).coeff(0).is_zero());
    }

    #[test]
    fn quartic_is_symmetric() {
        assert_eq!(i2_quartic(2, 5), i2_quartic(5, 2));
    }

    #[test]
    fn patterns_hold_beyond_exceptions() {
        for m in 0..8 {
            for n in 0..8 {
                let l = BlockLabel::new(m, n, OperatorKind::I2);
                if let Some(ok) = sign_pattern_holds(&l) {
                    assert!(ok, "{m},{n}");
                }
            }
        }
    }
}
