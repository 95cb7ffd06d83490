//! Regression table of reference values plus the exact property suite.

use std::fmt::Write as _;

use biharm_core::exact::QSqrt2;
use biharm_core::kernel::verify_kernel;
use biharm_core::operators::OperatorKind;
use biharm_core::properties::{block_preservation, cayley_hamilton, descartes_equals_sturm, self_adjointness};
use biharm_core::spectrum::{
    block, check_factorisation, eigenvalue_multiplicity, i2_quartic, index_nullity, jacobi_composition_condition,
    pharmonic_sweep, BlockLabel, Composition,
};
use biharm_core::Result;
use rand::SeedableRng;
use serde::Serialize;

use crate::commands::{conformal, equivariant, hessian_random, mu1, variation};

#[derive(Serialize)]
pub struct Row {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct SelftestReport {
    pub cutoff: u32,
    pub seed: u64,
    pub rows: Vec<Row>,
}

fn row(rows: &mut Vec<Row>, name: &str, expected: impl ToString, observed: impl ToString) {
    let (expected, observed) = (expected.to_string(), observed.to_string());
    rows.push(Row {
        name: name.into(),
        passed: expected == observed,
        expected,
        observed,
    });
}

fn pair(x: (usize, usize)) -> String {
    format!("({}, {})", x.0, x.1)
}

pub fn run(cutoff: u32, seed: u64, grid_n: usize) -> Result<(SelftestReport, String)> {
    let mut rows = Vec::new();

    let i2 = index_nullity(OperatorKind::I2, cutoff)?;
    row(&mut rows, "I2 index and nullity", pair((1, 11)), pair((i2.index, i2.nullity)));
    let null_of = |m: u32, n: u32| {
        i2.per_block
            .iter()
            .find(|b| (b.m, b.n) == (m, n))
            .map(|b| b.signature.zero)
            .unwrap_or(0)
    };
    row(
        &mut rows,
        "I2 nullity by block S0, S10, S01, S11",
        "[3, 2, 2, 4]",
        format!("{:?}", [null_of(0, 0), null_of(1, 0), null_of(0, 1), null_of(1, 1)]),
    );
    row(&mut rows, "I2 tail certified", true, i2.tail_certified);

    let b11 = block(&BlockLabel::new(1, 1, OperatorKind::I2))?;
    let q = i2_quartic(1, 1);
    row(&mut rows, "I2 (1,1) block: Q4^4 with c0 = 0", "true", (b11.char_poly == q.pow(4) && q.coeff(0) == QSqrt2::from_int(0)).to_string());
    let factored = (1..=10u32).try_fold(true, |acc, m| {
        Ok::<_, biharm_core::Error>(acc && check_factorisation(&block(&BlockLabel::new(m, 0, OperatorKind::I2))?)?)
    })?;
    row(&mut rows, "I2 (m,0) factorisation, m = 1..10", true, factored);

    let j = index_nullity(OperatorKind::J, cutoff)?;
    row(&mut rows, "J index and nullity", pair((4, 7)), pair((j.index, j.nullity)));
    row(
        &mut rows,
        "J multiplicity of 4 - 4 sqrt 2 on (1,0), (0,1)",
        4,
        eigenvalue_multiplicity(OperatorKind::J, &[(1, 0), (0, 1)], &mu1())?,
    );
    // p = 1 is (4, 11): the (2,0) and (0,2) blocks carry extra kernel there.
    let ints = pharmonic_sweep(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], cutoff)?;
    row(
        &mut rows,
        "J_p integer sweep p = 1..6",
        "[(4, 11), (4, 7), (4, 7), (0, 11), (0, 7), (0, 7)]",
        format!("[{}]", ints.iter().map(|r| pair((r.index, r.nullity))).collect::<Vec<_>>().join(", ")),
    );
    let floats = pharmonic_sweep(&[1.5, 3.9, 4.1], cutoff)?;
    row(
        &mut rows,
        "J_p float sweep p = 1.5, 3.9, 4.1",
        "[(4, 7), (4, 7), (0, 7)]",
        format!("[{}]", floats.iter().map(|r| pair((r.index, r.nullity))).collect::<Vec<_>>().join(", ")),
    );

    let proj = index_nullity(OperatorKind::I2Projected, cutoff)?;
    row(&mut rows, "I2Projected index and nullity", pair((0, 7)), pair((proj.index, proj.nullity)));
    let witness = match jacobi_composition_condition(cutoff, 2)? {
        Composition::Fails { witness } => witness.exact.map(|x| x.to_string()).unwrap_or_else(|| "inexact".into()),
        Composition::Holds => "holds".into(),
    };
    row(&mut rows, "composition condition witness", mu1(), witness);

    let k = verify_kernel()?;
    row(&mut rows, "kernel checks", true, k.passed());
    row(&mut rows, "kernel Gram rank", 11, k.gram_rank);

    for (name, outcome) in [
        ("variation derivatives and tension profile", variation(&[1, 2, 3, 4], grid_n)?),
        ("20 random Hessian pairs", hessian_random(20, seed, grid_n.max(16))?),
        ("conformal Rayleigh quotient", conformal([1.0, 0.0, 0.0, 0.0], grid_n)?),
        ("equivariant critical point and Hessian", equivariant(0.5, 0.5, grid_n)?),
    ] {
        row(&mut rows, name, true, outcome.passed);
    }

    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    for p in [
        self_adjointness(&mut rng, 5, 3)?,
        block_preservation(4)?,
        cayley_hamilton(4, 8)?,
        descartes_equals_sturm(6)?,
    ] {
        let observed = if p.passed() {
            format!("{} cases", p.cases)
        } else {
            format!("{} of {} cases failed: {}", p.failures.len(), p.cases, p.failures[0])
        };
        row(&mut rows, &format!("property: {}", p.name), format!("{} cases", p.cases), observed);
    }

    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "{} {}: expected {}, observed {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.expected,
            r.observed
        );
    }
    Ok((SelftestReport { cutoff, seed, rows }, text))
}
