//! The real quadratic field `Q(√2)`.
//!
//! Every value is stored as a pair of reduced rationals `(a, b)` meaning
//! `a + b·√2`. Since `√2` is irrational the pair is unique, so structural
//! equality is numeric equality. Ordering is the one induced by the real
//! embedding (`√2 > 0`) and is decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rat::{rat, rat_from_str, rat_sqrt, rat_to_string, Rat};

/// An element `a + b·√2` of `Q(√2)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    a: Rat,
    b: Rat,
}

impl QSqrt2 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Self { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn from_rat(a: Rat) -> Self {
        Self::new(a, Rat::zero())
    }

    /// `n/d + 0·√2`.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rat(rat(n, d))
    }

    /// `(an/ad) + (bn/bd)·√2`.
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(rat(an, ad), rat(bn, bd))
    }

    pub fn sqrt2() -> Self {
        Self::new(Rat::zero(), Rat::one())
    }

    /// `k·√2` for an integer `k`.
    pub fn sqrt2_times(k: i64) -> Self {
        Self::new(Rat::zero(), Rat::from_integer(BigInt::from(k)))
    }

    /// `2^(e/2)`, exact for any integer `e`.
    pub fn pow2_half(e: i64) -> Self {
        let whole = e.div_euclid(2);
        let two_pow = if whole >= 0 {
            Rat::from_integer(BigInt::from(2).pow(whole as u32))
        } else {
            Rat::new(BigInt::one(), BigInt::from(2).pow((-whole) as u32))
        };
        if e.rem_euclid(2) == 0 {
            Self::from_rat(two_pow)
        } else {
            Self::new(Rat::zero(), two_pow)
        }
    }

    /// Rational part `a`.
    pub fn rational(&self) -> &Rat {
        &self.a
    }

    /// Coefficient `b` of `√2`.
    pub fn surd(&self) -> &Rat {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat(2, 1) * &self.b * &self.b
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Exact sign of `a + b√2`.
    ///
    /// Same-sign parts decide immediately; mixed signs compare `a²` with `2b²`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rat::zero());
        let sb = self.b.cmp(&Rat::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = rat(2, 1) * &self.b * &self.b;
                // |a| dominates iff a² > 2b²; the sign then follows a.
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("√2 is irrational"),
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(&self.a / &n, -&self.b / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(&self.a * k, &self.b * k)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact square root inside `Q(√2)`, if one exists.
    ///
    /// Writes `(c + d√2)² = (c² + 2d²) + 2cd·√2` and solves using the norm,
    /// which must itself be a rational square.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let candidates: Vec<Self> = if self.b.is_zero() {
            let mut v = Vec::new();
            if let Some(c) = rat_sqrt(&self.a) {
                v.push(Self::from_rat(c));
            }
            if let Some(d) = rat_sqrt(&(&self.a / rat(2, 1))) {
                v.push(Self::new(Rat::zero(), d));
            }
            v
        } else {
            let s = match rat_sqrt(&self.norm()) {
                Some(s) => s,
                None => return None,
            };
            let mut v = Vec::new();
            for s in [s.clone(), -s] {
                let c2 = (&self.a + &s) / rat(2, 1);
                if let Some(c) = rat_sqrt(&c2) {
                    if !c.is_zero() {
                        let d = &self.b / (rat(2, 1) * &c);
                        v.push(Self::new(c, d));
                    }
                }
            }
            v
        };
        candidates
            .into_iter()
            .map(|r| r.abs())
            .find(|r| &(r * r) == self)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√2", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}√2", self.a, -self.b.clone())
                } else {
                    write!(f, "{} + {}√2", self.a, self.b)
                }
            }
        }
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        Self::new(Rat::zero(), Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for QSqrt2 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rat> for QSqrt2 {
    fn from(a: Rat) -> Self {
        Self::from_rat(a)
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = rat(2, 1);
        QSqrt2::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: &QSqrt2) -> QSqrt2 {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QSqrt2> for &'a QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: QSqrt2) -> QSqrt2 {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a.clone(), -self.b.clone())
    }
}

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, rhs: &QSqrt2) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QSqrt2> for QSqrt2 {
    fn sub_assign(&mut self, rhs: &QSqrt2) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&QSqrt2> for QSqrt2 {
    fn mul_assign(&mut self, rhs: &QSqrt2) {
        *self = &*self * rhs;
    }
}

impl Sum for QSqrt2 {
    fn sum<I: Iterator<Item = QSqrt2>>(iter: I) -> Self {
        iter.fold(QSqrt2::zero(), |acc, x| acc + x)
    }
}

/// Binary field operation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn qs2_arith(x: &QSqrt2, y: &QSqrt2, op: FieldOp) -> Result<QSqrt2> {
    Ok(match op {
        FieldOp::Add => x + y,
        FieldOp::Sub => x - y,
        FieldOp::Mul => x * y,
        FieldOp::Div => x.checked_div(y)?,
    })
}

/// Wire form `{"a": "p/q", "b": "r/s"}`, lossless.
#[derive(serde::Serialize, serde::Deserialize)]
struct Wire {
    a: String,
    b: String,
}

impl serde::Serialize for QSqrt2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            a: rat_to_string(&self.a),
            b: rat_to_string(&self.b),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for QSqrt2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let parse = |t: &str| {
            rat_from_str(t).ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))
        };
        Ok(QSqrt2::new(parse(&w.a)?, parse(&w.b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_one_plus_sqrt2() {
        let x = QSqrt2::from_parts(1, 1, 1, 1);
        let y = QSqrt2::from_parts(1, 1, -1, 1);
        assert_eq!(x * y, QSqrt2::from_int(-1));
    }

    #[test]
    fn inverse_of_sqrt2() {
        let inv = QSqrt2::sqrt2().inv().unwrap();
        assert_eq!(inv, QSqrt2::from_parts(0, 1, 1, 2));
    }

    #[test]
    fn divide_by_zero_is_an_error() {
        let r = qs2_arith(&QSqrt2::one(), &QSqrt2::zero(), FieldOp::Div);
        assert_eq!(r, Err(Error::DivisionByZero));
    }

    #[test]
    fn sign_of_mixed_terms() {
        // 4 − 4√2: 16 < 32 so the surd dominates.
        assert!(QSqrt2::from_parts(4, 1, -4, 1).is_negative());
        assert!(QSqrt2::from_parts(-3, 1, 3, 1).is_positive());
        assert!(QSqrt2::from_parts(3, 1, -2, 1).is_positive());
        assert_eq!(QSqrt2::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn pow2_half_values() {
        assert_eq!(QSqrt2::pow2_half(0), QSqrt2::one());
        assert_eq!(QSqrt2::pow2_half(1), QSqrt2::sqrt2());
        assert_eq!(QSqrt2::pow2_half(2), QSqrt2::from_int(2));
        assert_eq!(QSqrt2::pow2_half(-3), QSqrt2::from_parts(0, 1, 1, 4));
        assert_eq!(QSqrt2::pow2_half(-2), QSqrt2::frac(1, 2));
    }

    #[test]
    fn exact_square_roots() {
        let r = QSqrt2::from_parts(3, 1, 2, 1).sqrt().unwrap();
        assert_eq!(r, QSqrt2::from_parts(1, 1, 1, 1));
        assert_eq!(QSqrt2::from_int(8).sqrt(), Some(QSqrt2::sqrt2_times(2)));
        assert_eq!(QSqrt2::from_int(9).sqrt(), Some(QSqrt2::from_int(3)));
        assert_eq!(QSqrt2::from_int(3).sqrt(), None);
        assert_eq!(QSqrt2::from_int(-4).sqrt(), None);
        // 32 = (4√2)², the discriminant behind 4 ± 4√2.
        assert_eq!(QSqrt2::from_int(32).sqrt(), Some(QSqrt2::sqrt2_times(4)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(QSqrt2::from_parts(4, 1, -4, 1).to_string(), "4 - 4√2");
        assert_eq!(QSqrt2::from_parts(0, 1, 1, 2).to_string(), "1/2√2");
    }
}
