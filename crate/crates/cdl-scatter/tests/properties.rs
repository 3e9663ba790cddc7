use std::sync::Arc;

use cdl_algebra::{int, rat, BigRational, ExpVector};
use cdl_scatter::*;
use cdl_seed::SkewDecomposition;
use proptest::prelude::*;

fn rank3_context(w: [i64; 3], trunc: i64) -> Arc<GroupContext> {
    let z = || int(0);
    let omega = vec![
        vec![z(), int(w[0]), int(w[1])],
        vec![int(-w[0]), z(), int(w[2])],
        vec![int(-w[1]), int(-w[2]), z()],
    ];
    GroupContext::from_decomposition(&SkewDecomposition { delta: vec![1, 1, 1], omega }, trunc).unwrap()
}

fn vector(dim: usize) -> impl Strategy<Value = ExpVector> {
    prop::collection::vec(0i32..3, dim)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x > 0))
        .prop_map(ExpVector)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn pentagon_relation(w in prop::array::uniform3(-2i64..3), n1 in vector(3), n2 in vector(3)) {
        let ctx = rank3_context(w, 8);
        let c = ctx.pairing(&n2, &n1.0);
        prop_assume!(c != int(0));
        let e = BigRational::from_integer(1.into()) / &c;
        let p = |n: &ExpVector| psi_element(n, &e, &ctx).unwrap();
        let lhs = p(&n2).mul(&p(&n1)).unwrap();
        let rhs = p(&n1).mul(&p(&(&n1 + &n2))).unwrap().mul(&p(&n2)).unwrap();
        prop_assert!(lhs.group_eq(&rhs).unwrap());
    }

    #[test]
    fn commuting_when_pairing_vanishes(w in prop::array::uniform3(-2i64..3), n1 in vector(3), k in 1i32..3, a in -3i64..4, b in -3i64..4) {
        let ctx = rank3_context(w, 7);
        let n2 = n1.scale(k);
        let x = psi_element(&n1, &int(a), &ctx).unwrap();
        let y = psi_element(&n2, &int(b), &ctx).unwrap();
        prop_assert!(x.mul(&y).unwrap().group_eq(&y.mul(&x).unwrap()).unwrap());
    }

    #[test]
    fn log_exp_round_trip(terms in prop::collection::vec((vector(2), -4i64..5, 1i64..4), 1..5)) {
        let ctx = GroupContext::rank2(10);
        let mut x = LieElement::default();
        for (m, p, q) in terms {
            x = x.add(&LieElement { coeffs: [(m, rat(p, q))].into_iter().collect() });
        }
        let g = x.exp(&ctx);
        prop_assert_eq!(group_log(&g).unwrap(), x.clone());
        prop_assert_eq!(g.is_identity(), x.is_zero());
    }

    #[test]
    fn factorization_round_trip(factors in prop::collection::vec((vector(2), -2i64..3), 1..5)) {
        let ctx = GroupContext::rank2(9);
        let mut g = GroupElement::identity(&ctx);
        for (n, c) in &factors {
            g = g.left_mul_psi(n, &int(*c));
        }
        for order in [SlopeOrder::Decreasing, SlopeOrder::Increasing] {
            let rays = group_log_factorize(&g, order).unwrap();
            prop_assert!(ordered_product(&ctx, &rays).group_eq(&g).unwrap());
        }
    }

    #[test]
    fn inverse_and_associativity(a in vector(3), b in vector(3), c in vector(3), w in prop::array::uniform3(-2i64..3)) {
        let ctx = rank3_context(w, 6);
        let x = psi_element(&a, &int(2), &ctx).unwrap();
        let y = psi_element(&b, &rat(-1, 2), &ctx).unwrap();
        let z = psi_element(&c, &int(1), &ctx).unwrap();
        let xy = x.mul(&y).unwrap();
        prop_assert!(xy.mul(&z).unwrap().group_eq(&x.mul(&y.mul(&z).unwrap()).unwrap()).unwrap());
        prop_assert!(xy.mul(&xy.inverse()).unwrap().is_identity());
    }
}

#[test]
fn psi_fixes_its_own_monomial() {
    let ctx = GroupContext::rank2(8);
    let n = ExpVector(vec![2, 3]);
    let g = psi_element(&n, &int(3), &ctx).unwrap();
    assert!(g.monomial_unit(&n.0).is_one());
    assert!(psi_element(&n, &int(1), &ctx).unwrap().mul(&psi_element(&n, &int(-1), &ctx).unwrap()).unwrap().is_identity());
}

#[test]
fn mixed_contexts_are_rejected() {
    let a = psi_element(&ExpVector(vec![1, 0]), &int(1), &GroupContext::rank2(4)).unwrap();
    let b = psi_element(&ExpVector(vec![1, 0]), &int(1), &GroupContext::rank2(5)).unwrap();
    assert!(matches!(a.mul(&b), Err(ScatterError::MixedContext)));
    assert!(matches!(psi_element(&ExpVector(vec![0, 0]), &int(1), &GroupContext::rank2(4)), Err(ScatterError::BadVector(_))));
}
