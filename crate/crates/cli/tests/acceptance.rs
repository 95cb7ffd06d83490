//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines always appear in the output.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::Command;
use std::time::Instant;

use biharm_core::operators::OperatorKind;
use biharm_core::properties::{block_preservation, cayley_hamilton, descartes_equals_sturm, self_adjointness};
use biharm_core::spectrum::{block, expected_char_poly, i2_quartic, BlockLabel};
use rand::SeedableRng;
use serde_json::{json, Value};

const SEED: u64 = 20240601;

struct Run {
    code: i32,
    json: Value,
    seconds: f64,
}

fn biharm(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_biharm"))
        .args(args)
        .output()
        .expect("binary runs");
    let seconds = start.elapsed().as_secs_f64();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap_or(-1),
        json,
        seconds,
    }
}

fn num(v: &Value) -> f64 {
    match v {
        Value::String(s) => s.parse().unwrap_or(f64::NAN),
        other => other.as_f64().unwrap_or(f64::NAN),
    }
}

fn totals(r: &Run) -> (i64, i64) {
    (
        r.json["report"]["index"].as_i64().unwrap_or(-1),
        r.json["report"]["nullity"].as_i64().unwrap_or(-1),
    )
}

fn contribution(r: &Run, m: u64, n: u64) -> (u64, u64) {
    r.json["report"]["contributions"]
        .as_array()
        .and_then(|a| a.iter().find(|c| c["m"] == m && c["n"] == n))
        .map(|c| (c["index"].as_u64().unwrap(), c["nullity"].as_u64().unwrap()))
        .unwrap_or((0, 0))
}

fn criterion_1() -> (bool, String) {
    let r = biharm(&["spectrum", "--operator", "i2", "--cutoff", "30"]);
    let t = totals(&r);
    let parts = [contribution(&r, 0, 0), contribution(&r, 1, 0), contribution(&r, 0, 1), contribution(&r, 1, 1)];
    let ok = r.code == 0
        && t == (1, 11)
        && parts == [(1, 3), (0, 2), (0, 2), (0, 4)]
        && r.json["report"]["contributions"].as_array().map(|a| a.len()) == Some(4)
        && r.json["report"]["tail_certified"] == true
        && r.seconds < 60.0;
    (ok, format!("I2 cutoff 30: (index, nullity) = {t:?}, per block S0/S10/S01/S11 = {parts:?}, {:.1} s", r.seconds))
}

fn criterion_2() -> (bool, String) {
    let b = block(&BlockLabel::new(1, 1, OperatorKind::I2)).expect("block");
    let q = i2_quartic(1, 1);
    let c0_zero = num_traits::Zero::is_zero(&q.coeff(0));
    let mut ok = c0_zero && b.char_poly == q.pow(4);
    let mut matched = 0;
    for m in 1..=10 {
        let label = BlockLabel::new(m, 0, OperatorKind::I2);
        let got = block(&label).expect("block").char_poly;
        let want = expected_char_poly(&label).expect("closed form");
        let same = got.degree() == want.degree() && (0..=8).all(|k| got.coeff(k) == want.coeff(k));
        matched += same as usize;
        ok &= same;
    }
    (ok, format!("(1,1) block = Q4^4 with c0 = 0: {}; (m,0) factored forms matched for {matched}/10", c0_zero && b.char_poly == q.pow(4)))
}

fn criterion_3() -> (bool, String) {
    let j = biharm(&["spectrum", "--operator", "j", "--cutoff", "30"]);
    let mu = &j.json["report"]["lowest_eigenvalue"];
    let mut ok = j.code == 0
        && totals(&j) == (4, 7)
        && mu["value"] == json!({"a": "4/1", "b": "-4/1"})
        && mu["multiplicity"] == 4;
    let mut got = Vec::new();
    for p in ["1", "2", "3", "4", "5", "6"] {
        let r = biharm(&["spectrum", "--operator", "jp", "--p", p, "--cutoff", "30"]);
        ok &= r.code == 0 && r.json["report"]["mode"] == "exact";
        got.push(totals(&r));
    }
    // At p = 1 the (2,0) and (0,2) blocks are singular as well: their 2x2 piece
    // has determinant 32m²(pm² − 4), zero at p = 1, m = 2. Nullity is 11 there.
    ok &= got == vec![(4, 11), (4, 7), (4, 7), (0, 11), (0, 7), (0, 7)];
    let sweep = biharm(&["spectrum", "--operator", "jp", "--sweep", "1.5,3.9,4.1", "--cutoff", "30"]);
    let rows: Vec<(i64, i64)> = sweep.json["report"]["rows"]
        .as_array()
        .map(|a| a.iter().map(|r| (r["index"].as_i64().unwrap(), r["nullity"].as_i64().unwrap())).collect())
        .unwrap_or_default();
    ok &= sweep.code == 0 && rows == vec![(4, 7), (4, 7), (0, 7)];
    (
        ok,
        format!(
            "J = {:?}, mu1 = 4-4sqrt2 multiplicity {}; J_p p=1..6 = {got:?} (p=1 nullity 11, see note); float p=1.5,3.9,4.1 = {rows:?}",
            totals(&j),
            mu["multiplicity"]
        ),
    )
}

fn criterion_4() -> (bool, String) {
    let r = biharm(&["spectrum", "--operator", "i2proj", "--cutoff", "30"]);
    let c = &r.json["report"]["composition"];
    let witness = num(&c["witness"]["approx"]);
    let ok = r.code == 0
        && totals(&r) == (0, 7)
        && c["status"] == "fails"
        && c["witness"]["exact"] == json!({"a": "4/1", "b": "-4/1"})
        && witness > -4.0
        && witness < 0.0;
    (ok, format!("I2Projected = {:?}; composition condition fails with witness 4-4sqrt2 ~ {witness:.12}", totals(&r)))
}

fn criterion_5() -> (bool, String) {
    let r = biharm(&["kernel"]);
    let checks = r.json["report"]["checks"].as_array().cloned().unwrap_or_default();
    let failed = checks.iter().filter(|c| c["passed"] != true).count();
    let ok = r.code == 0 && failed == 0 && r.json["report"]["gram_rank"] == 11 && checks.len() >= 13;
    (ok, format!("{} exact checks, {failed} failed, Gram rank {}", checks.len(), r.json["report"]["gram_rank"]))
}

fn criterion_6() -> (bool, String) {
    let r = biharm(&["oracle", "variation"]);
    let pi2 = PI * PI;
    let mut ok = r.code == 0 && r.seconds < 10.0;
    let mut vals = Vec::new();
    for o in r.json["report"]["orders"].as_array().cloned().unwrap_or_default() {
        let order = o["order"].as_u64().unwrap();
        let v = num(&o["finite_difference"]["value"]);
        ok &= if order == 4 {
            (v + 48.0 * pi2).abs() <= 1e-4 * 48.0 * pi2
        } else {
            v.abs() <= 1e-6 * pi2
        };
        vals.push(v);
    }
    ok &= vals.len() == 4;
    let tau = r.json["report"]["tension_profile"].as_array().cloned().unwrap_or_default();
    let worst = tau.iter().map(|t| num(&t["max_abs_error"])).fold(0.0f64, f64::max);
    ok &= !tau.is_empty() && worst <= 1e-10;
    let vals: Vec<String> = vals.iter().map(|v| format!("{v:.3e}")).collect();
    (ok, format!("d^l E2/dt^l, l=1..4: [{}] (-48pi^2 = {:.6}); |tau|^2 profile max error {worst:.1e}; {:.2} s", vals.join(", "), -48.0 * pi2, r.seconds))
}

fn criterion_7() -> (bool, String) {
    let seed = SEED.to_string();
    let r = biharm(&["--seed", &seed, "oracle", "hessian", "--random", "20"]);
    let cmp = r.json["report"]["comparisons"].as_array().cloned().unwrap_or_default();
    let pi2 = PI * PI;
    let mut worst_rel = 0.0f64;
    let mut ok = r.code == 0 && cmp.len() == 20;
    for c in &cmp {
        let got = num(&c["finite_difference"]["value"]);
        let exact = num(&c["exact"]);
        if exact.abs() < 1e-6 * pi2 {
            ok &= got.abs() <= 1e-6 * pi2;
        } else {
            let rel = (got - exact).abs() / exact.abs();
            worst_rel = worst_rel.max(rel);
            ok &= rel <= 1e-4;
        }
    }
    (ok, format!("20 random pairs (seed {SEED}), worst relative deviation {worst_rel:.1e}"))
}

fn criterion_8() -> (bool, String) {
    let pi2 = PI * PI;
    let rel = |x: f64, y: f64| (x - y).abs() <= 1e-8 * y.abs();
    let mut ok = true;
    let mut q = Vec::new();
    for (a, a2) in [("1,0,0,0", 1.0), ("0,0,1,1", 2.0), ("0.3,-1.2,0.5,2", 0.09 + 1.44 + 0.25 + 4.0)] {
        let r = biharm(&["oracle", "conformal", "--a", a]);
        let ray = &r.json["report"]["rayleigh"];
        let (n, d, quot) = (num(&ray["numerator"]), num(&ray["denominator"]), num(&ray["quotient"]));
        ok &= r.code == 0 && rel(n, -pi2 * a2) && rel(d, 0.75 * pi2 * a2) && rel(quot, -4.0 / 3.0);
        q.push(quot);
    }
    (ok, format!("(J V_a, V_a) = -pi^2|a|^2, (V_a, V_a) = 3/4 pi^2|a|^2, quotients {q:.12?}"))
}

fn criterion_9() -> (bool, String) {
    let r = biharm(&["equivariant", "--r1", "0.5", "--r2", "0.5"]);
    let pts = r.json["report"]["critical_points"].as_array().cloned().unwrap_or_default();
    let scan = r.json["report"]["scan_minima"].as_array().map(|a| a.len()).unwrap_or(0);
    let mut ok = r.code == 0 && pts.len() == 1 && scan == 1;
    let mut h = [[f64::NAN; 2]; 2];
    if let Some(p) = pts.first() {
        let (eta, nu) = (num(&p["point"]["eta"]), num(&p["point"]["nu"]));
        ok &= (eta - FRAC_PI_4).abs() < 1e-10 && (nu - FRAC_PI_4).abs() < 1e-10 && p["isometric"] == true;
        for i in 0..2 {
            for j in 0..2 {
                h[i][j] = num(&p["hessian"]["matrix"][i][j]);
            }
        }
        let want = [[-16.0, 0.0], [0.0, 0.0]];
        ok &= (0..2).all(|i| (0..2).all(|j| (h[i][j] - want[i][j]).abs() <= 1e-6));
        ok &= r.json["report"]["exact_hessian"] == json!([[{"a": "-16/1", "b": "0/1"}, {"a": "0/1", "b": "0/1"}], [{"a": "0/1", "b": "0/1"}, {"a": "0/1", "b": "0/1"}]]);
        ok &= p["hessian"]["index"] == 1 && p["hessian"]["nullity"] == 1;
    }
    (ok, format!("{} isometric critical point(s), scan minima {scan}, Hessian {h:.9?}", pts.len()))
}

fn criterion_10() -> (bool, String) {
    let mut rng = rand::rngs::StdRng::seed_from_u64(SEED);
    let outcomes = [
        self_adjointness(&mut rng, 10, 3).expect("self-adjointness"),
        block_preservation(6).expect("block preservation"),
        cayley_hamilton(30, 8).expect("Cayley-Hamilton"),
        descartes_equals_sturm(8).expect("Descartes = Sturm"),
    ];
    let ok = outcomes.iter().all(|o| o.passed());
    let summary: Vec<String> = outcomes.iter().map(|o| format!("{} {}/{}", o.name, o.cases - o.failures.len(), o.cases)).collect();
    // Float = exact signatures and Descartes = Sturm on every block up to cutoff 30
    // are enforced inside every exact spectrum run of criteria 1, 3 and 4: any
    // disagreement aborts the run with exit status 1.
    (ok, format!("{}; float/exact and Descartes/Sturm agreement enforced on all cutoff-30 runs above", summary.join(", ")))
}

fn main() {
    let criteria: [fn() -> (bool, String); 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut all = true;
    for (k, c) in criteria.iter().enumerate() {
        let (ok, detail) = c();
        all &= ok;
        println!("{} criterion {}: {detail}", if ok { "PASS" } else { "FAIL" }, k + 1);
    }
    println!(
        "note: J_p at p = 1 has nullity 11, not 7; the (2,0) and (0,2) blocks have extra kernel there (determinant 32m^2(pm^2 - 4))."
    );
    if !all {
        std::process::exit(1);
    }
}
