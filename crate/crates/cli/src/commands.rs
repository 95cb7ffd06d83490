//! One function per subcommand; each returns a serialisable report.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use biharm_core::equivariant::{
    exact_equivariant_hessian, reduced_bienergy_quadrature, reduced_critical, reduced_gradient, reduced_hessian,
    residual_scan, QuadratureCheck, ReducedHessian, ReducedPoint,
};
use biharm_core::exact::QSqrt2;
use biharm_core::kernel::{verify_kernel, KernelReport};
use biharm_core::operators::OperatorKind;
use biharm_core::oracle::{
    compare_hessian, conformal_rayleigh, joint_gram, tension_profile_error, variation_derivatives, HessianComparison,
    JointGram, Rayleigh, VariationReport,
};
use biharm_core::properties::random_section;
use biharm_core::spectrum::{
    eigenvalue_multiplicity, index_nullity, jacobi_composition_condition, pharmonic_sweep, Composition,
    SpectrumReport, SweepRow,
};
use biharm_core::torus::{FrameIndex, Section, Target};
use biharm_core::{Error, Result};
use rand::SeedableRng;
use serde::Serialize;

use crate::output::Outcome;

/// Dimension of the domain, the `m` of the composition condition.
const DOMAIN_DIM: u32 = 2;

pub fn mu1() -> QSqrt2 {
    QSqrt2::from_parts(4, 1, -4, 1)
}

#[derive(Serialize)]
struct Contribution {
    m: u32,
    n: u32,
    index: usize,
    nullity: usize,
}

#[derive(Serialize)]
struct LowestEigenvalue {
    value: QSqrt2,
    approx: f64,
    multiplicity: usize,
    blocks: Vec<(u32, u32)>,
}

#[derive(Serialize)]
struct SpectrumOut {
    #[serde(flatten)]
    report: SpectrumReport,
    contributions: Vec<Contribution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lowest_eigenvalue: Option<LowestEigenvalue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    composition: Option<Composition>,
}

fn composition_text(c: &Composition) -> String {
    match c {
        Composition::Holds => "composition condition holds on every enumerated block".into(),
        Composition::Fails { witness } => format!(
            "composition condition FAILS: eigenvalue {} ~ {:.12} {} lies in (-{}, 0)",
            witness.exact.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "(isolated)".into()),
            witness.approx,
            witness.block.map(|(m, n)| format!("of block ({m},{n})")).unwrap_or_default(),
            2 * DOMAIN_DIM
        ),
    }
}

pub fn spectrum(op: OperatorKind, cutoff: u32) -> Result<Outcome> {
    let report = index_nullity(op, cutoff)?;
    let contributions: Vec<Contribution> = report
        .per_block
        .iter()
        .filter(|b| b.signature.neg + b.signature.zero > 0)
        .map(|b| Contribution {
            m: b.m,
            n: b.n,
            index: b.signature.neg,
            nullity: b.signature.zero,
        })
        .collect();
    let lowest_eigenvalue = if op == OperatorKind::J {
        let blocks = vec![(1, 0), (0, 1)];
        Some(LowestEigenvalue {
            value: mu1(),
            approx: mu1().to_f64(),
            multiplicity: eigenvalue_multiplicity(op, &blocks, &mu1())?,
            blocks,
        })
    } else {
        None
    };
    let composition = match op {
        OperatorKind::J | OperatorKind::I2Projected => Some(jacobi_composition_condition(cutoff, DOMAIN_DIM)?),
        _ => None,
    };

    let mut text = format!(
        "{} cutoff {} ({:?}): index {}, nullity {}\n",
        op, cutoff, report.mode, report.index, report.nullity
    );
    for c in &contributions {
        let _ = writeln!(text, "  S^({},{}): index {}, nullity {}", c.m, c.n, c.index, c.nullity);
    }
    if let Some(l) = &lowest_eigenvalue {
        let _ = writeln!(text, "  eigenvalue {} ~ {:.12} with multiplicity {} on {:?}", l.value, l.approx, l.multiplicity, l.blocks);
    }
    if let Some(c) = &composition {
        let _ = writeln!(text, "  {}", composition_text(c));
    }
    let _ = writeln!(text, "  tail: {}", report.tail_note);
    Ok(Outcome::new(
        &SpectrumOut {
            report,
            contributions,
            lowest_eigenvalue,
            composition,
        },
        text,
        true,
    ))
}

#[derive(Serialize)]
struct SweepOut {
    cutoff: u32,
    rows: Vec<SweepRow>,
}

pub fn sweep(p_grid: &[f64], cutoff: u32) -> Result<Outcome> {
    let rows = pharmonic_sweep(p_grid, cutoff)?;
    let mut text = format!("J_p sweep, cutoff {cutoff}\n");
    for r in &rows {
        let _ = writeln!(text, "  p = {}: index {}, nullity {} ({:?})", r.p, r.index, r.nullity, r.mode);
    }
    Ok(Outcome::new(&SweepOut { cutoff, rows }, text, true))
}

pub fn kernel() -> Result<Outcome> {
    let r: KernelReport = verify_kernel()?;
    let mut text = String::new();
    for c in &r.checks {
        let _ = writeln!(text, "{} {}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) });
    }
    let _ = writeln!(text, "Gram rank {}", r.gram_rank);
    let passed = r.passed();
    Ok(Outcome::new(&r, text, passed))
}

/// `1..10` for the Killing sections, or a frame name.
pub fn named_section(name: &str) -> Result<Section> {
    let frame = |e| Section::frame(Target::S4, e);
    match name.to_ascii_lowercase().as_str() {
        "nu" | "v_nu" => frame(FrameIndex::Nu),
        "eta" | "v_eta" => frame(FrameIndex::Eta),
        "gamma" | "v_gamma" => frame(FrameIndex::Gamma),
        "theta" | "v_theta" => frame(FrameIndex::Theta),
        s => {
            let id: usize = s
                .trim_start_matches('v')
                .parse()
                .map_err(|_| Error::InvalidInput(format!("unknown section '{name}'; use 1..10, nu, eta, gamma or theta")))?;
            biharm_core::kernel::killing_expansion(id)
        }
    }
}

#[derive(Serialize)]
struct HessianOut {
    grid_n: usize,
    seed: Option<u64>,
    comparisons: Vec<HessianComparison>,
}

pub fn hessian_pair(i: &str, j: &str, grid_n: usize) -> Result<Outcome> {
    let c = compare_hessian(&named_section(i)?, &named_section(j)?, grid_n)?;
    hessian_outcome(vec![c], grid_n, None)
}

pub fn hessian_random(count: usize, seed: u64, grid_n: usize) -> Result<Outcome> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let comparisons = (0..count)
        .map(|_| {
            let v = random_section(&mut rng, Target::S4, 2);
            let w = random_section(&mut rng, Target::S4, 2);
            compare_hessian(&v, &w, grid_n)
        })
        .collect::<Result<Vec<_>>>()?;
    hessian_outcome(comparisons, grid_n, Some(seed))
}

fn hessian_outcome(comparisons: Vec<HessianComparison>, grid_n: usize, seed: Option<u64>) -> Result<Outcome> {
    let mut text = String::new();
    for c in &comparisons {
        let _ = writeln!(
            text,
            "{} finite difference {:.10e} vs pi^2*({}) = {:.10e}",
            if c.within_tolerance { "PASS" } else { "FAIL" },
            c.finite_difference.value,
            c.exact_pi2,
            c.exact
        );
    }
    let passed = comparisons.iter().all(|c| c.within_tolerance);
    Ok(Outcome::new(&HessianOut { grid_n, seed, comparisons }, text, passed))
}

#[derive(Serialize)]
struct TensionCheck {
    t: f64,
    max_abs_error: f64,
}

#[derive(Serialize)]
struct VariationOut {
    orders: Vec<VariationReport>,
    tension_profile: Vec<TensionCheck>,
    seconds: f64,
}

pub fn variation_within_tolerance(r: &VariationReport) -> bool {
    if r.order == 4 {
        r.abs_error <= 1e-4 * r.closed_form.abs()
    } else {
        r.abs_error <= 1e-6 * PI * PI
    }
}

pub fn variation(orders: &[usize], grid_n: usize) -> Result<Outcome> {
    let start = Instant::now();
    let reports = orders
        .iter()
        .map(|&o| variation_derivatives(o, grid_n, None))
        .collect::<Result<Vec<_>>>()?;
    let tension_profile = [0.0, 0.5, 1.0, 2.0]
        .iter()
        .map(|&t| Ok(TensionCheck { t, max_abs_error: tension_profile_error(t, grid_n)? }))
        .collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    let mut passed = true;
    for r in &reports {
        let ok = variation_within_tolerance(r);
        passed &= ok;
        let _ = writeln!(
            text,
            "{} order {}: finite difference {:.10e}, closed form {} pi^2 = {:.10e}",
            if ok { "PASS" } else { "FAIL" },
            r.order,
            r.finite_difference.value,
            r.closed_form_pi2,
            r.closed_form
        );
        if let Some(w) = &r.finite_difference.warning {
            let _ = writeln!(text, "  warning: {w}");
        }
    }
    for t in &tension_profile {
        let ok = t.max_abs_error <= 1e-10;
        passed &= ok;
        let _ = writeln!(text, "{} |tau(Phi_t)|^2 at t = {}: max error {:.2e}", if ok { "PASS" } else { "FAIL" }, t.t, t.max_abs_error);
    }
    let out = VariationOut {
        orders: reports,
        tension_profile,
        seconds: start.elapsed().as_secs_f64(),
    };
    Ok(Outcome::new(&out, text, passed))
}

#[derive(Serialize)]
struct ConformalOut {
    rayleigh: Rayleigh,
    expected_numerator: f64,
    expected_denominator: f64,
    expected_quotient: f64,
    lowest_jacobi_eigenvalue: f64,
    quotient_above_lowest: bool,
    joint_gram: JointGram,
}

pub fn conformal(a: [f64; 4], grid_n: usize) -> Result<Outcome> {
    let r = conformal_rayleigh(a, grid_n)?;
    let a2: f64 = a.iter().map(|x| x * x).sum();
    let p2 = PI * PI;
    let (en, ed, eq) = (-p2 * a2, 0.75 * p2 * a2, -4.0 / 3.0);
    let rel = |x: f64, y: f64| (x - y).abs() <= 1e-8 * y.abs();
    let ok = rel(r.numerator, en) && rel(r.denominator, ed) && rel(r.quotient, eq);
    let gram = joint_gram(grid_n)?;
    let mu = mu1().to_f64();
    let above = r.quotient > mu;
    let text = format!(
        "{} (J V_a, V_a) = {:.12e} (expected {:.12e}), (V_a, V_a) = {:.12e} (expected {:.12e}), quotient {:.12}\n\
         {} quotient -4/3 > 4 - 4 sqrt 2 = {:.12}\n\
         {} joint Gram of conformal fields and W_1..W_4 has rank {}\n",
        if ok { "PASS" } else { "FAIL" },
        r.numerator,
        en,
        r.denominator,
        ed,
        r.quotient,
        if above { "PASS" } else { "FAIL" },
        mu,
        if gram.rank == 8 { "PASS" } else { "FAIL" },
        gram.rank
    );
    let passed = ok && above && gram.rank == 8;
    let out = ConformalOut {
        rayleigh: r,
        expected_numerator: en,
        expected_denominator: ed,
        expected_quotient: eq,
        lowest_jacobi_eigenvalue: mu,
        quotient_above_lowest: above,
        joint_gram: gram,
    };
    Ok(Outcome::new(&out, text, passed))
}

#[derive(Serialize)]
struct CriticalOut {
    point: ReducedPoint,
    isometric: bool,
    gradient: [f64; 2],
    hessian: ReducedHessian,
    quadrature: QuadratureCheck,
}

#[derive(Serialize)]
struct EquivariantOut {
    r1: f64,
    r2: f64,
    critical_points: Vec<CriticalOut>,
    scan_minima: Vec<(f64, f64, f64)>,
    exact_hessian: [[QSqrt2; 2]; 2],
    hessian_matches_exact: Option<bool>,
}

pub fn equivariant(r1: f64, r2: f64, grid_n: usize) -> Result<Outcome> {
    let points = reduced_critical(r1, r2)?;
    let exact = exact_equivariant_hessian()?;
    let mut critical_points = Vec::new();
    let mut text = format!("R1 = {r1}, R2 = {r2}: {} isometric critical point(s) in 0 < eta, nu < pi/2\n", points.len());
    let mut matches = None;
    let clifford = (r1 - 0.5).abs() < 1e-15 && (r2 - 0.5).abs() < 1e-15;
    for p in points {
        let hessian = reduced_hessian(&p)?;
        let quadrature = reduced_bienergy_quadrature(&p, grid_n)?;
        let _ = writeln!(
            text,
            "  (eta, nu) = ({:.12}, {:.12}); Hessian [[{:.9}, {:.9}], [{:.9}, {:.9}]]; index {}, nullity {}",
            p.eta, p.nu, hessian.matrix[0][0], hessian.matrix[0][1], hessian.matrix[1][0], hessian.matrix[1][1],
            hessian.index, hessian.nullity
        );
        if clifford {
            let ok = (0..2).all(|i| (0..2).all(|j| (hessian.matrix[i][j] - exact[i][j].to_f64()).abs() <= 1e-6));
            matches = Some(matches.unwrap_or(true) && ok);
        }
        critical_points.push(CriticalOut {
            point: p,
            isometric: p.isometric(),
            gradient: reduced_gradient(&p),
            hessian,
            quadrature,
        });
    }
    let _ = writeln!(
        text,
        "  exact pairings: [[{}, {}], [{}, {}]]",
        exact[0][0], exact[0][1], exact[1][0], exact[1][1]
    );
    if let Some(m) = matches {
        let _ = writeln!(text, "{} Hessian matches exact pairings within 1e-6", if m { "PASS" } else { "FAIL" });
    }
    let scan_minima = residual_scan(r1, r2, 400, 0.1);
    let _ = writeln!(text, "  residual scan: {} near-zero local minima", scan_minima.len());
    let passed = matches.unwrap_or(true);
    let out = EquivariantOut {
        r1,
        r2,
        critical_points,
        scan_minima,
        exact_hessian: exact,
        hessian_matches_exact: matches,
    };
    Ok(Outcome::new(&out, text, passed))
}
