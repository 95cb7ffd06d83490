//! Real trigonometric polynomials on the flat torus in the product basis
//! `cos/sin(jγ)·cos/sin(kθ)`, with exact `Q(√2)` coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::{rat, QSqrt2, Rat};

/// Which product of one-dimensional factors a monomial uses.
///
/// The variant order fixes the within-frame basis ordering: cc, cs, sc, ss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// `cos(jγ)cos(kθ)`
    Cc,
    /// `cos(jγ)sin(kθ)`
    Cs,
    /// `sin(jγ)cos(kθ)`
    Sc,
    /// `sin(jγ)sin(kθ)`
    Ss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Wave {
    Cos,
    Sin,
}

impl Kind {
    fn split(self) -> (Wave, Wave) {
        match self {
            Kind::Cc => (Wave::Cos, Wave::Cos),
            Kind::Cs => (Wave::Cos, Wave::Sin),
            Kind::Sc => (Wave::Sin, Wave::Cos),
            Kind::Ss => (Wave::Sin, Wave::Sin),
        }
    }

    fn join(g: Wave, t: Wave) -> Kind {
        match (g, t) {
            (Wave::Cos, Wave::Cos) => Kind::Cc,
            (Wave::Cos, Wave::Sin) => Kind::Cs,
            (Wave::Sin, Wave::Cos) => Kind::Sc,
            (Wave::Sin, Wave::Sin) => Kind::Ss,
        }
    }
}

/// A basis function `kind(jγ, kθ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub kind: Kind,
    pub j: u32,
    pub k: u32,
}

impl Monomial {
    pub fn new(kind: Kind, j: u32, k: u32) -> Self {
        Self { kind, j, k }
    }

    /// False for the combinations that vanish identically (a sine of zero frequency).
    pub fn is_nonvanishing(&self) -> bool {
        let (g, t) = self.kind.split();
        !(g == Wave::Sin && self.j == 0 || t == Wave::Sin && self.k == 0)
    }

    /// Laplace eigenvalue `4(j² + k²)`.
    pub fn eigenvalue(&self) -> i64 {
        4 * (self.j as i64 * self.j as i64 + self.k as i64 * self.k as i64)
    }

    /// Mean of the square over the torus: 1, 1/2 or 1/4.
    pub fn mean_square(&self) -> Rat {
        let h = |f: u32| if f == 0 { rat(1, 1) } else { rat(1, 2) };
        h(self.j) * h(self.k)
    }

    pub fn eval(&self, gamma: f64, theta: f64) -> f64 {
        let w = |w: Wave, x: f64| match w {
            Wave::Cos => x.cos(),
            Wave::Sin => x.sin(),
        };
        let (g, t) = self.kind.split();
        w(g, self.j as f64 * gamma) * w(t, self.k as f64 * theta)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, t) = self.kind.split();
        let name = |w: Wave| if w == Wave::Cos { "cos" } else { "sin" };
        match (self.j, self.k) {
            (0, 0) => write!(f, "1"),
            (j, 0) => write!(f, "{}({j}γ)", name(g)),
            (0, k) => write!(f, "{}({k}θ)", name(t)),
            (j, k) => write!(f, "{}({j}γ){}({k}θ)", name(g), name(t)),
        }
    }
}

/// Product of two one-dimensional waves as a signed sum of waves, each with weight ±1/2.
fn wave_product(a: Wave, p: u32, b: Wave, q: u32) -> Vec<(Wave, u32, i64)> {
    let (p, q) = (p as i64, q as i64);
    let sum = (p + q) as u32;
    let diff = p - q;
    let adiff = diff.unsigned_abs() as u32;
    let dsign = diff.signum();
    match (a, b) {
        // cos p cos q = ½cos(p+q) + ½cos(p−q)
        (Wave::Cos, Wave::Cos) => vec![(Wave::Cos, sum, 1), (Wave::Cos, adiff, 1)],
        // sin p sin q = ½cos(p−q) − ½cos(p+q)
        (Wave::Sin, Wave::Sin) => vec![(Wave::Cos, adiff, 1), (Wave::Cos, sum, -1)],
        // sin p cos q = ½sin(p+q) + ½sin(p−q)
        (Wave::Sin, Wave::Cos) => vec![(Wave::Sin, sum, 1), (Wave::Sin, adiff, dsign)],
        // cos p sin q = ½sin(p+q) − ½sin(p−q)
        (Wave::Cos, Wave::Sin) => vec![(Wave::Sin, sum, 1), (Wave::Sin, adiff, -dsign)],
    }
}

/// Finite trigonometric sum with exact coefficients; zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TrigPoly {
    terms: BTreeMap<Monomial, QSqrt2>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: QSqrt2) -> Self {
        Self::monomial(Monomial::new(Kind::Cc, 0, 0), c)
    }

    pub fn one() -> Self {
        Self::constant(QSqrt2::from_int(1))
    }

    pub fn monomial(m: Monomial, c: QSqrt2) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn basis(kind: Kind, j: u32, k: u32) -> Self {
        Self::monomial(Monomial::new(kind, j, k), QSqrt2::from_int(1))
    }

    /// `cos(jγ)`
    pub fn cos_g(j: u32) -> Self {
        Self::basis(Kind::Cc, j, 0)
    }

    /// `sin(jγ)`
    pub fn sin_g(j: u32) -> Self {
        Self::basis(Kind::Sc, j, 0)
    }

    /// `cos(kθ)`
    pub fn cos_t(k: u32) -> Self {
        Self::basis(Kind::Cc, 0, k)
    }

    /// `sin(kθ)`
    pub fn sin_t(k: u32) -> Self {
        Self::basis(Kind::Cs, 0, k)
    }

    pub fn add_term(&mut self, m: Monomial, c: &QSqrt2) {
        if !m.is_nonvanishing() || c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(QSqrt2::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QSqrt2)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> QSqrt2 {
        self.terms.get(m).cloned().unwrap_or_else(QSqrt2::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn d_gamma(&self) -> Self {
        self.derive(true)
    }

    pub fn d_theta(&self) -> Self {
        self.derive(false)
    }

    fn derive(&self, in_gamma: bool) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (g, t) = m.kind.split();
            let (w, freq) = if in_gamma { (g, m.j) } else { (t, m.k) };
            let (nw, factor) = match w {
                Wave::Cos => (Wave::Sin, -(freq as i64)),
                Wave::Sin => (Wave::Cos, freq as i64),
            };
            let kind = if in_gamma {
                Kind::join(nw, t)
            } else {
                Kind::join(g, nw)
            };
            out.add_term(Monomial::new(kind, m.j, m.k), &(c * &QSqrt2::from_int(factor)));
        }
        out
    }

    /// Flat Laplacian `Δ = −4(∂²_γ + ∂²_θ)` of the torus `S¹(1/2) × S¹(1/2)`.
    pub fn laplace(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.eigenvalue() != 0)
                .map(|(m, c)| (*m, c * &QSqrt2::from_int(m.eigenvalue())))
                .collect(),
        }
    }

    /// `λ` when `Δf = λf` exactly; `None` for zero or mixed-frequency input.
    pub fn laplace_eigenvalue(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::eigenvalue);
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    /// `(1/π²)∫_𝕋 f dV`, the constant term, for area normalised to π².
    pub fn mean(&self) -> QSqrt2 {
        self.coeff(&Monomial::new(Kind::Cc, 0, 0))
    }

    /// Largest frequency appearing in either variable.
    pub fn max_frequency(&self) -> u32 {
        self.terms.keys().map(|m| m.j.max(m.k)).max().unwrap_or(0)
    }

    pub fn eval(&self, gamma: f64, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64() * m.eval(gamma, theta))
            .sum()
    }
}

impl<'a> Add<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(&QSqrt2::from_int(-1))
    }
}

impl<'a> Mul<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let quarter = QSqrt2::frac(1, 4);
        let mut out = TrigPoly::zero();
        for (ma, ca) in &self.terms {
            let (ga, ta) = ma.kind.split();
            for (mb, cb) in &rhs.terms {
                let (gb, tb) = mb.kind.split();
                let c = &(ca * cb) * &quarter;
                for (gw, gf, gs) in wave_product(ga, ma.j, gb, mb.j) {
                    if gs == 0 {
                        continue;
                    }
                    for (tw, tf, ts) in wave_product(ta, ma.k, tb, mb.k) {
                        if ts == 0 {
                            continue;
                        }
                        let m = Monomial::new(Kind::join(gw, tw), gf, tf);
                        out.add_term(m, &(&c * &QSqrt2::from_int(gs * ts)));
                    }
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TrigPoly {
            type Output = TrigPoly;
            fn $m(self, rhs: TrigPoly) -> TrigPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})·{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplace_of_cos_gamma() {
        let f = TrigPoly::cos_g(1);
        assert_eq!(f.laplace(), f.scale(&QSqrt2::from_int(4)));
        assert!(TrigPoly::one().laplace().is_zero());
    }

    #[test]
    fn d_gamma_of_mixed() {
        // d/dγ [cos 2γ sin θ] = −2 sin 2γ sin θ
        let f = TrigPoly::basis(Kind::Cs, 2, 1);
        let expect = TrigPoly::basis(Kind::Ss, 2, 1).scale(&QSqrt2::from_int(-2));
        assert_eq!(f.d_gamma(), expect);
    }

    #[test]
    fn vanishing_monomials_are_dropped() {
        let f = TrigPoly::basis(Kind::Ss, 0, 3);
        assert!(f.is_zero());
        assert!(TrigPoly::basis(Kind::Sc, 0, 1).is_zero());
    }

    #[test]
    fn square_of_sin_averages_to_half() {
        let s = TrigPoly::sin_g(3);
        assert_eq!((&s * &s).mean(), QSqrt2::frac(1, 2));
        let c = TrigPoly::basis(Kind::Cs, 1, 2);
        assert_eq!((&c * &c).mean(), QSqrt2::frac(1, 4));
    }

    #[test]
    fn product_matches_pointwise() {
        let a = &TrigPoly::basis(Kind::Sc, 2, 1) + &TrigPoly::basis(Kind::Cs, 1, 3);
        let b = &TrigPoly::basis(Kind::Ss, 1, 1) + &TrigPoly::cos_t(2);
        let ab = &a * &b;
        for (g, t) in [(0.3, 1.1), (2.0, -0.7), (5.5, 4.4)] {
            let lhs = ab.eval(g, t);
            let rhs = a.eval(g, t) * b.eval(g, t);
            assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn eigenvalue_detection() {
        let f = &TrigPoly::basis(Kind::Cc, 1, 1) + &TrigPoly::basis(Kind::Ss, 1, 1);
        assert_eq!(f.laplace_eigenvalue(), Some(8));
        let g = &f + &TrigPoly::cos_g(1);
        assert_eq!(g.laplace_eigenvalue(), None);
    }
}
