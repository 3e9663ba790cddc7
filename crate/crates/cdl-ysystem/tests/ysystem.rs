use cdl_dilog::{mod_rogers, verify_period_di, PI2_6};
use cdl_seed::{DynkinType, Family, Permutation};
use cdl_ysystem::{
    build_bipartite_word, constant_ysystem_solve, symbolic_half_periodicity, tropical_run, tropical_run_with,
    BipartiteQuiver, DEFAULT_TERM_BUDGET,
};
use std::f64::consts::PI;

fn t(s: &str) -> DynkinType {
    DynkinType::parse(s).unwrap()
}

/// The sign choice drawn for `Q(A₃, A₂)`: `−, +, −` along `A₃` and `+, −` along `A₂`.
fn a3a2_drawn() -> BipartiteQuiver {
    BipartiteQuiver::with_signs(&t("A3"), &t("A2"), -1, 1).unwrap()
}

#[test]
fn product_quiver_a3_a2() {
    let q = a3a2_drawn();
    assert_eq!(q.v_plus, vec![1, 3, 5]);
    let mut arrows: Vec<(usize, usize)> = q.quiver.arrows().keys().map(|&(i, j)| (i + 1, j + 1)).collect();
    arrows.sort();
    assert_eq!(arrows, vec![(1, 2), (2, 5), (3, 2), (4, 1), (5, 4), (5, 6), (6, 3)]);
    let w = build_bipartite_word(&q, 2).unwrap();
    assert_eq!(w.dirs, vec![1, 3, 5, 0, 2, 4]);
    let mut after = q.quiver.clone();
    for &v in &q.v_plus {
        after = after.mutate(v).unwrap();
    }
    assert_eq!(after, q.quiver.opposite());
}

#[test]
fn a1_a1_word_and_period() {
    let q = BipartiteQuiver::new(&t("A1"), &t("A1")).unwrap();
    assert_eq!(build_bipartite_word(&q, 8).unwrap().dirs, vec![0; 4]);
    assert_eq!(tropical_run(&t("A1"), &t("A1")).unwrap().period, 4);
}

#[test]
fn a3_a2_final_frame() {
    for q in [a3a2_drawn(), BipartiteQuiver::new(&t("A3"), &t("A2")).unwrap()] {
        let rep = tropical_run_with(q).unwrap();
        assert_eq!(rep.period, 7);
        assert!(rep.omega_pair_used);
        // c_{(a,a′)}(7) = e_{(ω(a),ω′(a′))}: the anti-diagonal.
        let expected: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| (i + j == 5) as i64).collect()).collect();
        assert_eq!(rep.trace[7], expected);
        assert_eq!((rep.weights.n_plus, rep.weights.n_minus), (9, 12));
    }
}

#[test]
fn a2_a1_even_sector_count() {
    let rep = tropical_run(&t("A2"), &t("A1")).unwrap();
    assert_eq!(rep.weights.n_minus, 3);
    assert_eq!(rep.nu, Permutation::transposition(2, 0, 1));
}

fn ade_up_to(rank: usize) -> Vec<DynkinType> {
    let mut v: Vec<DynkinType> = (1..=rank).filter_map(|r| DynkinType::new(Family::A, r)).collect();
    v.extend((4..=rank).filter_map(|r| DynkinType::new(Family::D, r)));
    v.extend((6..=rank.min(8)).filter_map(|r| DynkinType::new(Family::E, r)));
    v
}

#[test]
fn tropical_periods_for_small_pairs() {
    let types = ade_up_to(16);
    let mut count = 0;
    for x in &types {
        for xp in &types {
            if x.rank * xp.rank > 16 {
                continue;
            }
            let rep = tropical_run(x, xp).unwrap_or_else(|e| panic!("({}, {}): {e}", x.name(), xp.name()));
            assert_eq!(rep.period, x.coxeter_number + xp.coxeter_number);
            assert_eq!(2 * rep.weights.n_minus as usize, x.coxeter_number * x.rank * xp.rank);
            count += 1;
        }
    }
    assert!(count > 100);
}

#[test]
fn symbolic_half_periods_and_di() {
    for (x, xp) in [("A2", "A1"), ("A2", "A2"), ("A3", "A2")] {
        let (x, xp) = (t(x), t(xp));
        let rep = symbolic_half_periodicity(&x, &xp, DEFAULT_TERM_BUDGET).unwrap();
        let n = x.rank * xp.rank;
        let di = verify_period_di(&rep.run, &Permutation::identity(n), 20, 1e-8, 1).unwrap();
        assert_eq!(di.constant_term as usize, x.coxeter_number * n);
    }
}

#[test]
fn symbolic_budget_is_enforced() {
    assert!(symbolic_half_periodicity(&t("A3"), &t("A2"), 3).is_err());
}

#[test]
fn constant_ysystem_levels() {
    let s = constant_ysystem_solve(&t("A1"), 2).unwrap();
    assert!((s.values[0][0] - 1.0).abs() < 1e-13);
    assert!((s.lhs - PI * PI / 12.0).abs() < 1e-14 && (s.rhs - PI * PI / 12.0).abs() < 1e-15);
    assert_eq!(s.rhs_rational, (1, 2));

    // y(1+y) = 1 by bisection.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * (1.0 + mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = constant_ysystem_solve(&t("A1"), 3).unwrap();
    assert!(s.values[0].iter().all(|y| (y - lo).abs() < 1e-12));
    assert!((s.lhs - s.rhs).abs() < 1e-10 && (s.rhs - 2.0 * PI * PI / 15.0).abs() < 1e-14);

    // A₂ at level 2: y² = 1 + y at both nodes.
    let s = constant_ysystem_solve(&t("A2"), 2).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(s.values.iter().all(|r| (r[0] - phi).abs() < 1e-12));
    assert!((s.lhs - s.rhs).abs() < 1e-9 && (s.rhs - PI * PI / 5.0).abs() < 1e-14);

    // A₃ at level 2: (2, 3, 2) solves y₁² = 1 + y₂, y₂² = (1 + y₁)(1 + y₃).
    let s = constant_ysystem_solve(&t("A3"), 2).unwrap();
    for (r, e) in s.values.iter().zip([2.0, 3.0, 2.0]) {
        assert!((r[0] - e).abs() < 1e-12);
    }
    let oracle = 2.0 * mod_rogers(2.0).unwrap() + mod_rogers(3.0).unwrap();
    assert!((s.lhs - s.rhs).abs() < 1e-9 && (oracle - 2.0 * PI2_6).abs() < 1e-12);
}

#[test]
fn constant_ysystem_sum_rule_other_types() {
    for (x, l) in [("D4", 2), ("D5", 3), ("E6", 2), ("A4", 4), ("E8", 2)] {
        let s = constant_ysystem_solve(&t(x), l).unwrap();
        assert!((s.lhs - s.rhs).abs() < 1e-9, "{x} level {l}: {} vs {}", s.lhs, s.rhs);
    }
}
