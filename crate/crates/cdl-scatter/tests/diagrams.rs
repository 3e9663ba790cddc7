use cdl_algebra::{int, BigRational, ExpVector};
use cdl_pattern::{run_pattern, MutationWord};
use cdl_scatter::*;
use cdl_seed::ExchangeMatrix;

fn ev(v: [i32; 2]) -> ExpVector {
    ExpVector(v.to_vec())
}

/// Ordered `(n, exponent)` list, left to right.
fn flat(d: &Rank2Diagram) -> Vec<([i32; 2], BigRational)> {
    d.factors().map(|f| ([f.n.0[0], f.n.0[1]], f.exponent.clone())).collect()
}

fn expect(list: &[([i32; 2], i64)]) -> Vec<([i32; 2], BigRational)> {
    list.iter().map(|&(n, e)| (n, int(e))).collect()
}

/// Rays along the factor list, to compare with a printed ordering where
/// factors on one ray may be listed in any order.
fn by_ray(list: &[([i32; 2], BigRational)]) -> Vec<(ExpVector, Vec<([i32; 2], BigRational)>)> {
    let mut out: Vec<(ExpVector, Vec<([i32; 2], BigRational)>)> = Vec::new();
    for (n, e) in list {
        let (p, _) = ev(*n).primitive();
        match out.last_mut() {
            Some((q, v)) if *q == p => v.push((*n, e.clone())),
            _ => out.push((p, vec![(*n, e.clone())])),
        }
    }
    for (_, v) in &mut out {
        v.sort();
    }
    out
}

#[test]
fn finite_type_wall_sets() {
    let a2 = build_rank2_csd((1, 1), 10).unwrap();
    assert_eq!(flat(&a2), expect(&[([1, 0], 1), ([1, 1], 1), ([0, 1], 1)]));
    let rays: Vec<_> = a2.walls.iter().map(|w| (w.ray, w.full_line)).collect();
    assert_eq!(rays, vec![([0, -1], true), ([1, -1], false), ([1, 0], true)]);

    let b2 = build_rank2_csd((1, 2), 10).unwrap();
    assert_eq!(flat(&b2), expect(&[([1, 0], 1), ([1, 1], 2), ([1, 2], 1), ([0, 1], 2)]));
    let rays: Vec<_> = b2.walls.iter().map(|w| w.ray).collect();
    assert_eq!(rays, vec![[0, -1], [1, -2], [1, -1], [1, 0]]);

    let g2 = build_rank2_csd((1, 3), 12).unwrap();
    assert_eq!(
        flat(&g2),
        expect(&[([1, 0], 1), ([1, 1], 3), ([2, 3], 1), ([1, 2], 3), ([1, 3], 1), ([0, 1], 3)])
    );
    let rays: Vec<_> = g2.walls.iter().map(|w| w.ray).collect();
    assert_eq!(rays, vec![[0, -1], [1, -3], [1, -2], [2, -3], [1, -1], [1, 0]]);
}

#[test]
fn affine_ordering_at_degrees_three_and_seven() {
    let d3 = build_rank2_csd((2, 2), 3).unwrap();
    assert_eq!(flat(&d3), expect(&[([1, 0], 2), ([2, 1], 2), ([1, 1], 4), ([1, 2], 2), ([0, 1], 2)]));

    let d7 = build_rank2_csd((2, 2), 7).unwrap();
    let printed = expect(&[
        ([1, 0], 2),
        ([2, 1], 2),
        ([3, 2], 2),
        ([4, 3], 2),
        ([1, 1], 4),
        ([2, 2], 2),
        ([3, 4], 2),
        ([2, 3], 2),
        ([1, 2], 2),
        ([0, 1], 2),
    ]);
    assert_eq!(by_ray(&flat(&d7)), by_ray(&printed));
    // Beyond: the central ray only carries powers of two.
    let d9 = build_rank2_csd((2, 2), 9).unwrap();
    let center = d9.walls.iter().find(|w| w.normal == ev([1, 1])).unwrap();
    let got: Vec<_> = center.factors.iter().map(|f| (f.n.clone(), f.exponent.clone())).collect();
    assert_eq!(got, vec![(ev([1, 1]), int(4)), (ev([2, 2]), int(2)), (ev([4, 4]), int(1))]);
}

#[test]
fn one_four_truncated_at_seven() {
    let d = build_rank2_csd((1, 4), 7).unwrap();
    let printed = expect(&[
        ([1, 0], 1),
        ([1, 1], 4),
        ([3, 4], 1),
        ([2, 3], 4),
        ([1, 2], 6),
        ([2, 4], 2),
        ([2, 5], 4),
        ([1, 3], 4),
        ([1, 4], 1),
        ([0, 1], 4),
    ]);
    assert_eq!(by_ray(&flat(&d)), by_ray(&printed));
}

#[test]
fn one_five_at_degree_sixteen() {
    let d = build_rank2_csd((1, 5), 16).unwrap();
    let printed = expect(&[
        ([1, 0], 1),
        ([1, 1], 5),
        ([4, 5], 1),
        ([3, 4], 5),
        ([5, 7], 10),
        ([2, 3], 10),
        ([4, 6], 10),
        ([6, 9], 15),
        ([5, 8], 85),
        ([3, 5], 27),
        ([6, 10], 302),
        ([4, 7], 85),
        ([5, 9], 295),
        ([1, 2], 10),
        ([2, 4], 10),
        ([3, 6], 15),
        ([4, 8], 45),
        ([5, 10], 130),
        ([5, 11], 1095),
        ([4, 9], 295),
        ([3, 7], 85),
        ([2, 5], 27),
        ([4, 10], 302),
        ([3, 8], 85),
        ([4, 11], 295),
        ([1, 3], 10),
        ([2, 6], 10),
        ([3, 9], 15),
        ([4, 12], 45),
        ([3, 10], 27),
        ([2, 7], 10),
        ([3, 11], 5),
        ([1, 4], 5),
        ([1, 5], 1),
        ([0, 1], 5),
    ]);
    assert_eq!(by_ray(&flat(&d)), by_ray(&printed));
    assert!(d.is_positive_realization());
}

#[test]
fn positive_realization_and_consistency() {
    for delta in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (1, 4), (3, 3), (2, 3)] {
        let d = build_rank2_csd(delta, 8).unwrap();
        assert!(d.is_positive_realization(), "{delta:?}");
        assert_eq!(d.walls.first().unwrap().factors, vec![DilogFactor::new(ev([1, 0]), int(delta.0))]);
        assert_eq!(d.walls.last().unwrap().factors, vec![DilogFactor::new(ev([0, 1]), int(delta.1))]);
        let lp = ccw_loop(&d);
        assert!(path_ordered_product(&d, &lp).unwrap().is_identity(), "{delta:?}");
    }
}

#[test]
fn ordered_factorization_of_the_pentagon() {
    let ctx = GroupContext::rank2(10);
    let g = psi_element(&ev([0, 1]), &int(1), &ctx)
        .unwrap()
        .mul(&psi_element(&ev([1, 0]), &int(1), &ctx).unwrap())
        .unwrap();
    let rays = group_log_factorize(&g, SlopeOrder::Decreasing).unwrap();
    let got: Vec<_> = rays.iter().flat_map(|r| r.factors.clone()).collect();
    assert_eq!(
        got,
        vec![
            DilogFactor::new(ev([1, 0]), int(1)),
            DilogFactor::new(ev([1, 1]), int(1)),
            DilogFactor::new(ev([0, 1]), int(1)),
        ]
    );
    assert!(ordered_product(&ctx, &rays).group_eq(&g).unwrap());
    // Already anti-ordered: the factorization in that order is the input itself.
    let anti = group_log_factorize(&g, SlopeOrder::Increasing).unwrap();
    assert_eq!(anti.iter().map(|r| r.normal.clone()).collect::<Vec<_>>(), vec![ev([0, 1]), ev([1, 0])]);
}

#[test]
fn factorization_round_trips() {
    for (delta, l) in [((2, 2), 9), ((1, 4), 10), ((2, 3), 8)] {
        let d = build_rank2_csd(delta, l).unwrap();
        let ctx = d.context().clone();
        let rays: Vec<RayFactors> =
            d.walls.iter().map(|w| RayFactors { normal: w.normal.clone(), factors: w.factors.clone() }).collect();
        let e1 = ev([1, 0]);
        let e2 = ev([0, 1]);
        let g = GroupElement::identity(&ctx).left_mul_psi(&e1, &int(delta.0)).left_mul_psi(&e2, &int(delta.1));
        assert!(ordered_product(&ctx, &rays).group_eq(&g).unwrap(), "{delta:?}");
    }
}

#[test]
fn path_products() {
    let d = build_rank2_csd((1, 2), 10).unwrap();
    let ctx = d.context().clone();
    // One crossing gives that wall element.
    let one = path_ordered_product(&d, &[([1, -1], 1)]).unwrap();
    assert!(one.group_eq(&psi_element(&ev([1, 2]), &int(1), &ctx).unwrap()).unwrap());
    // Reversal inverts.
    let path = [([0, 1], 1), ([-1, 0], 1)];
    let back = [([-1, 0], -1), ([0, 1], -1)];
    let p = path_ordered_product(&d, &path).unwrap();
    let q = path_ordered_product(&d, &back).unwrap();
    assert!(p.mul(&q).unwrap().is_identity());
    // Homotopy invariance: the two ways from the first quadrant to the third.
    let other = [([1, 0], 1), ([1, -1], 1), ([1, -2], 1), ([0, -1], 1)];
    let lp = ccw_loop(&d);
    assert_eq!(lp.len(), 6);
    let r = path_ordered_product(&d, &other).unwrap();
    assert!(p.group_eq(&r).unwrap());
    assert!(p.inverse().group_eq(&q).unwrap());
    // Clockwise: the reverse of the counterclockwise loop.
    let cw: Vec<Crossing> = lp.iter().rev().map(|&(z, s)| (z, -s)).collect();
    assert!(path_ordered_product(&d, &cw).unwrap().is_identity());
    assert!(matches!(path_ordered_product(&d, &[([0, 0], 1)]), Err(ScatterError::BadVector(_))));
}

#[test]
fn loop_identities() {
    for (delta, l) in [((1, 1), 8), ((1, 2), 8), ((1, 3), 8), ((2, 2), 4), ((2, 2), 7), ((1, 4), 6)] {
        let d = build_rank2_csd(delta, l).unwrap();
        let lp = ccw_loop(&d);
        loop_di_formal(&d, &lp).unwrap_or_else(|e| panic!("{delta:?}: {e}"));
        // A partial loop is not an identity.
        assert!(loop_di_formal(&d, &lp[..2]).is_err());
    }
    let d = build_rank2_csd((2, 2), 4).unwrap();
    assert!(loop_di_formal(&d, &[]).unwrap().is_zero());
}

#[test]
fn period_relations() {
    let a2 = MutationWord::alternating(ExchangeMatrix::rank2(1, 1), 5).unwrap();
    period_relation_check(&run_pattern(&a2).unwrap(), 10).unwrap();
    let b2 = MutationWord::alternating(ExchangeMatrix::rank2(1, 2), 6).unwrap();
    period_relation_check(&run_pattern(&b2).unwrap(), 10).unwrap();
    let g2 = MutationWord::alternating(ExchangeMatrix::rank2(1, 3), 8).unwrap();
    period_relation_check(&run_pattern(&g2).unwrap(), 10).unwrap();
    let trivial = MutationWord::new(ExchangeMatrix::rank2(1, 2), vec![1, 1]).unwrap();
    period_relation_check(&run_pattern(&trivial).unwrap(), 6).unwrap();
    let open = MutationWord::alternating(ExchangeMatrix::rank2(1, 1), 4).unwrap();
    assert!(matches!(period_relation_check(&run_pattern(&open).unwrap(), 6), Err(ScatterError::NotPeriodic)));
}

#[test]
fn a2_period_product_is_the_pentagon() {
    let a2 = MutationWord::alternating(ExchangeMatrix::rank2(1, 1), 5).unwrap();
    let run = run_pattern(&a2).unwrap();
    let signs: Vec<i64> = run.eps.clone();
    let cs: Vec<Vec<i32>> = run.c_plus.iter().map(|c| c.0.clone()).collect();
    assert_eq!(signs, vec![1, 1, -1, -1, -1]);
    assert_eq!(cs, vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![0, 1]]);
}

#[test]
fn g_fan_against_supports() {
    let a2 = build_rank2_csd((1, 1), 8).unwrap();
    let rep = g_fan_embedding_check(&a2, &rank2_runs((1, 1), 6).unwrap());
    assert!(rep.holds());
    assert_eq!(rep.g_rays.len(), 5);
    assert!(rep.uncovered.is_empty());

    let b2 = build_rank2_csd((1, 2), 8).unwrap();
    let rep = g_fan_embedding_check(&b2, &rank2_runs((1, 2), 8).unwrap());
    assert!(rep.holds());
    assert_eq!(rep.g_rays.len(), 6);

    let g2 = build_rank2_csd((1, 3), 8).unwrap();
    assert!(g_fan_embedding_check(&g2, &rank2_runs((1, 3), 10).unwrap()).holds());

    let aff = build_rank2_csd((2, 2), 7).unwrap();
    let rep = g_fan_embedding_check(&aff, &rank2_runs((2, 2), 16).unwrap());
    assert!(rep.holds());
    assert_eq!(rep.uncovered, vec![[1, -1]]);
}
