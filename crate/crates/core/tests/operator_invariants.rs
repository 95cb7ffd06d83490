use biharm_core::exact::QSqrt2;
use biharm_core::operators::OperatorKind;
use biharm_core::properties::{exact_operators, random_section};
use biharm_core::spectrum::{block, BlockLabel};
use biharm_core::torus::{l2_inner, Section};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn operator() -> impl Strategy<Value = OperatorKind> {
    let ops = exact_operators();
    (0..ops.len()).prop_map(move |i| ops[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operators_are_self_adjoint(op in operator(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let v = random_section(&mut rng, op.target(), 2);
        let w = random_section(&mut rng, op.target(), 2);
        let lhs = l2_inner(&op.apply(&v).unwrap(), &w).unwrap();
        let rhs = l2_inner(&v, &op.apply(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operators_preserve_blocks(op in operator(), m in 0u32..4, n in 0u32..4, seed in any::<u64>()) {
        let label = BlockLabel::new(m, n, op);
        let basis = label.basis();
        let mut rng = StdRng::seed_from_u64(seed);
        let mut v = Section::zero(op.target());
        for e in &basis {
            let c = QSqrt2::frac(rand::Rng::gen_range(&mut rng, -3..=3), 2);
            v = &v + &e.section(op.target()).unwrap().scale(&c);
        }
        let image = op.apply(&v).unwrap();
        for f in image.components() {
            for (mono, _) in f.terms() {
                prop_assert_eq!((mono.j, mono.k), (m, n), "{} leaves S^({},{})", op, m, n);
            }
        }
    }

    #[test]
    fn block_spectra_are_consistent(op in operator(), m in 0u32..5, n in 0u32..5) {
        let b = block(&BlockLabel::new(m, n, op)).unwrap();
        prop_assert_eq!(b.signature.total(), b.matrix.dim());
        prop_assert_eq!(b.signature.zero, b.matrix.dim() - b.matrix.rank());
        let float = biharm_core::spectrum::float_signature(&b.matrix.to_f64());
        prop_assert_eq!(float, b.signature);
    }
}
