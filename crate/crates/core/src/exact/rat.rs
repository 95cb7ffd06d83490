use num_bigint::{BigInt, Sign};
use num_traits::Zero;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact rational square root, when numerator and denominator are both squares.
pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    if q.numer().sign() == Sign::Minus {
        return None;
    }
    if q.is_zero() {
        return Some(Rat::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// `"p/q"` form used in machine-readable reports; integers keep a `/1`.
pub fn rat_to_string(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rat_from_str(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_on_construction() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn square_roots() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn string_round_trip() {
        let q = rat(-7, 3);
        assert_eq!(rat_from_str(&rat_to_string(&q)), Some(q));
        assert_eq!(rat_from_str("5"), Some(int(5)));
        assert_eq!(rat_from_str("1/0"), None);
    }
}
