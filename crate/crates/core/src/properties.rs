//! Exact property checks shared by the test suite and the `selftest` command.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::roots::{descartes_signature, sturm_signature};
use crate::exact::{char_poly, QSqrt2};
use crate::operators::OperatorKind;
use crate::spectrum::{block, block_matrix, enumerate_blocks, BlockLabel};
use crate::torus::{l2_inner, Kind, Monomial, Section, Target, TrigPoly};

/// Every operator with an exact representation, `J_p` at integer `p` only.
pub fn exact_operators() -> Vec<OperatorKind> {
    let mut ops = vec![OperatorKind::I2, OperatorKind::J, OperatorKind::I2Projected];
    ops.extend((1..=6).map(|p| OperatorKind::Jp { p: p as f64 }));
    ops
}

/// Result of one property over many cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// A random section with frequencies at most `max_freq` and coefficients in `{k/4 : |k| ≤ 4}`.
pub fn random_section(rng: &mut impl Rng, target: Target, max_freq: u32) -> Section {
    let comps = (0..target.rank())
        .map(|_| {
            let mut f = TrigPoly::zero();
            for kind in [Kind::Cc, Kind::Cs, Kind::Sc, Kind::Ss] {
                for j in 0..=max_freq {
                    for k in 0..=max_freq {
                        let m = Monomial::new(kind, j, k);
                        if m.is_nonvanishing() && rng.gen_bool(0.4) {
                            f.add_term(m, &QSqrt2::frac(rng.gen_range(-4..=4), 4));
                        }
                    }
                }
            }
            f
        })
        .collect();
    Section::from_components(target, comps).expect("component count matches the target")
}

/// `(A V, W) = (V, A W)` exactly, for random sections and every exact operator.
pub fn self_adjointness(rng: &mut impl Rng, cases_per_op: usize, max_freq: u32) -> Result<PropertyOutcome> {
    let mut out = PropertyOutcome::new("self-adjointness");
    for op in exact_operators() {
        for _ in 0..cases_per_op {
            let v = random_section(rng, op.target(), max_freq);
            let w = random_section(rng, op.target(), max_freq);
            let left = l2_inner(&op.apply(&v)?, &w)?;
            let right = l2_inner(&v, &op.apply(&w)?)?;
            out.record(left == right, || format!("{op}: (AV,W) = {left} but (V,AW) = {right} for V = {v}, W = {w}"));
        }
    }
    Ok(out)
}

/// Every block up to `cutoff` is mapped into itself by every exact operator.
///
/// Assembly rebuilds each image from the block coefficients and fails on any leak.
pub fn block_preservation(cutoff: u32) -> Result<PropertyOutcome> {
    let mut out = PropertyOutcome::new("block preservation");
    for op in exact_operators() {
        for (m, n) in enumerate_blocks(cutoff) {
            let r = block_matrix(&BlockLabel::new(m, n, op));
            out.record(r.is_ok(), || format!("{op} on S^({m},{n}): {}", r.unwrap_err()));
        }
    }
    Ok(out)
}

/// `p(M) = 0` for the characteristic polynomial of every block of dimension at most `max_dim`.
pub fn cayley_hamilton(cutoff: u32, max_dim: usize) -> Result<PropertyOutcome> {
    let mut out = PropertyOutcome::new("Cayley-Hamilton");
    for op in exact_operators() {
        for (m, n) in enumerate_blocks(cutoff) {
            let label = BlockLabel::new(m, n, op);
            if label.dim() > max_dim {
                continue;
            }
            let mat = block_matrix(&label)?;
            // The full determinant, not the component product, keeps this independent.
            let p = char_poly(&mat)?;
            let ok = mat.eval_poly(&p).iter().all(num_traits::Zero::is_zero);
            out.record(ok, || format!("{label}: p(M) != 0"));
        }
    }
    Ok(out)
}

/// Descartes and Sturm signatures agree on every block characteristic polynomial.
pub fn descartes_equals_sturm(cutoff: u32) -> Result<PropertyOutcome> {
    let mut out = PropertyOutcome::new("Descartes = Sturm");
    for op in exact_operators() {
        for (m, n) in enumerate_blocks(cutoff) {
            let b = block(&BlockLabel::new(m, n, op))?;
            let mut polys = b.component_polys.clone();
            polys.push(b.char_poly.clone());
            for p in polys {
                let d = descartes_signature(&p)?;
                let s = sturm_signature(&p)?;
                out.record(d == s, || format!("{}: Descartes {d:?} vs Sturm {s:?} for {p}", b.label));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_runs_pass() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        assert!(self_adjointness(&mut rng, 2, 2).unwrap().passed());
        assert!(block_preservation(2).unwrap().passed());
        let ch = cayley_hamilton(2, 8).unwrap();
        assert!(ch.passed() && ch.cases > 0);
        assert!(descartes_equals_sturm(2).unwrap().passed());
    }

    #[test]
    fn random_sections_respect_target() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let v = random_section(&mut rng, Target::S3, 2);
        assert_eq!(v.components().len(), 3);
        assert!(v.max_frequency() <= 2);
    }
}
