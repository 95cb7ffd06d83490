//! The floating-point oracle against exact data it never sees directly.

use std::f64::consts::{FRAC_PI_2, PI};

use biharm_core::equivariant::{reduced_bienergy, reduced_bienergy_quadrature, reduced_critical, ReducedPoint};
use biharm_core::operators::OperatorKind;
use biharm_core::oracle::{agrees, fd_hessian_float, FloatSection, HESSIAN_GRID};
use biharm_core::spectrum::{block_matrix, BlockLabel};
use biharm_core::torus::l2_inner;
use nalgebra::SymmetricEigen;
use proptest::prelude::*;

/// Each exact eigenpair `(λ, c)` of an I2 block gives `Hess E₂(V, V) = π² λ |V|²`
/// for `V = Σ cᵢ eᵢ`. One eigenvector per distinct eigenvalue.
#[test]
fn block_eigenpairs_match_fd_hessian() {
    let pi2 = PI * PI;
    for (m, n) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (2, 2)] {
        let label = BlockLabel::new(m, n, OperatorKind::I2);
        let target = label.op.target();
        let sections: Vec<_> = label.basis().iter().map(|e| e.section(target).unwrap()).collect();
        let norm_sq = l2_inner(&sections[0], &sections[0]).unwrap().to_f64();
        let eig = SymmetricEigen::new(block_matrix(&label).unwrap().to_f64());
        let mut seen: Vec<f64> = Vec::new();
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            if seen.iter().any(|s| (s - lambda).abs() < 1e-9 * (1.0 + lambda.abs())) {
                continue;
            }
            seen.push(lambda);
            let c = eig.eigenvectors.column(k);
            let parts: Vec<(f64, &_)> = c.iter().copied().zip(&sections).collect();
            let v = FloatSection::from_scaled(&parts);
            let fd = fd_hessian_float(&v, &v, HESSIAN_GRID).unwrap();
            let exact = pi2 * lambda * norm_sq * c.norm_squared();
            assert!(agrees(fd.value, exact), "({m},{n}) λ = {lambda}: fd {} vs {exact}", fd.value);
        }
    }
}

#[test]
fn closed_form_matches_quadrature_on_grid() {
    let mut worst = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let eta = 0.05 + 1.4 * i as f64 / 9.0;
            let nu = 0.05 + 1.4 * j as f64 / 9.0;
            let p = ReducedPoint::new(eta, nu, 0.5, 0.5).unwrap();
            let q = reduced_bienergy_quadrature(&p, 16).unwrap();
            worst = worst.max(q.rel_error);
        }
    }
    assert!(worst < 1e-10, "worst relative error {worst:e}");
}

#[test]
fn isometric_critical_points() {
    let pts = reduced_critical(0.5, 0.5).unwrap();
    assert_eq!(pts.len(), 1);
    assert!((pts[0].eta - PI / 4.0).abs() < 1e-10 && (pts[0].nu - PI / 4.0).abs() < 1e-10);
    // sin η sin ν ≤ 1/√2 when the radii agree, so larger radii admit no isometry.
    assert!(reduced_critical(1.0, 1.0).unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Swapping the circle factors exchanges the radii and reflects ν.
    #[test]
    fn reduced_bienergy_symmetry(eta in 0.05f64..1.5, nu in 0.05f64..1.5, r1 in 0.2f64..2.0, r2 in 0.2f64..2.0) {
        let a = reduced_bienergy(&ReducedPoint::new(eta, nu, r1, r2).unwrap());
        let b = reduced_bienergy(&ReducedPoint::new(eta, FRAC_PI_2 - nu, r2, r1).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{} vs {}", a, b);
    }
}
