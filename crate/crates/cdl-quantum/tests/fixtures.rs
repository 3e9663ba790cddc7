use std::sync::Arc;

use cdl_algebra::{rat, BigRational};
use cdl_pattern::{run_pattern, MutationWord, PatternRun};
use cdl_quantum::{
    ordered_monomial, psi_q_power, q_poly, quantum_mutate, quantum_run, QContext, QLaurentElement, QState, QuantumError,
};
use cdl_seed::ExchangeMatrix;

fn run(d1: i64, d2: i64, len: usize) -> PatternRun {
    run_pattern(&MutationWord::alternating(ExchangeMatrix::rank2(d1, d2), len).unwrap()).unwrap()
}

/// `Σ c·q^{e}·(ordered word)` with `e = num/den`.
fn el(ctx: &Arc<QContext>, terms: &[(i64, (i64, i64), &[(usize, i32)])]) -> QLaurentElement {
    let mut acc = QLaurentElement::zero(ctx);
    for &(c, (n, d), word) in terms {
        let coeff = q_poly(ctx, &[(c, rat(n, d))]).unwrap();
        acc = acc.add(&ordered_monomial(ctx, word).unwrap().scale(&coeff)).unwrap();
    }
    acc
}

fn mono(ctx: &Arc<QContext>, word: &[(usize, i32)]) -> QLaurentElement {
    ordered_monomial(ctx, word).unwrap()
}

fn inv(x: &QLaurentElement) -> QLaurentElement {
    x.inv_unit().unwrap()
}

fn mul(xs: &[&QLaurentElement]) -> QLaurentElement {
    xs.iter().skip(1).fold(xs[0].clone(), |acc, x| acc.mul(x).unwrap())
}

fn assert_agree(name: &str, x: &QLaurentElement, y: &QLaurentElement) {
    assert_eq!(x.first_difference(y).unwrap(), None, "{name}: {x} vs {y}");
}

const Z: (i64, i64) = (0, 1);
const Y1: &[(usize, i32)] = &[(0, 1)];
const Y2: &[(usize, i32)] = &[(1, 1)];
const Y1Y2: &[(usize, i32)] = &[(0, 1), (1, 1)];
const ONE: &[(usize, i32)] = &[];

#[test]
fn a2_quantum_y_table() {
    let states = quantum_run(&run(1, 1, 5), 8).unwrap();
    let c = states[0].context().clone();
    let y1 = mono(&c, Y1);
    let y2 = mono(&c, Y2);
    let p1m = el(&c, &[(1, Z, ONE), (1, (-1, 1), Y1)]);
    let p1p = el(&c, &[(1, Z, ONE), (1, (1, 1), Y1)]);
    let p2m = el(&c, &[(1, Z, ONE), (1, (-1, 1), Y2)]);
    let p2p = el(&c, &[(1, Z, ONE), (1, (1, 1), Y2)]);
    let p3m = el(&c, &[(1, Z, ONE), (1, (-1, 1), Y2), (1, Z, Y1Y2)]);
    let p3p = el(&c, &[(1, Z, ONE), (1, (1, 1), Y2), (1, (2, 1), Y1Y2)]);
    let q = |e: i64| QLaurentElement::constant(&c, q_poly(&c, &[(1, rat(e, 1))]).unwrap());
    let table: [[QLaurentElement; 2]; 5] = [
        [inv(&y1), mul(&[&y2, &p1m])],
        [mul(&[&inv(&y1), &p3m]), mul(&[&inv(&y2), &inv(&p1p)])],
        [mul(&[&y1, &inv(&p3p)]), mul(&[&q(1), &mono(&c, &[(0, -1), (1, -1)]), &p2m])],
        [inv(&y2), mul(&[&q(1), &mono(&c, Y1Y2), &inv(&p2p)])],
        [y2.clone(), y1.clone()],
    ];
    for (s, row) in table.iter().enumerate() {
        for (i, want) in row.iter().enumerate() {
            assert_agree(&format!("Y{}({})", i + 1, s + 1), &states[s + 1].ys[i], want);
        }
    }
}

#[test]
fn quantum_periodicity_matches_the_tropical_period() {
    for (d2, len) in [(1, 5), (2, 6), (3, 8)] {
        let r = run(1, d2, len);
        let nu = r.detect_period().unwrap();
        let states = quantum_run(&r, 6).unwrap();
        assert!(states[len].is_permuted_initial(&nu).unwrap(), "δ₂ = {d2}");
        for s in 1..len {
            assert!(!states[s].is_permuted_initial(&nu).unwrap(), "δ₂ = {d2}, s = {s}");
        }
    }
}

#[test]
fn mutating_twice_in_one_direction_is_trivial() {
    let r = run(1, 2, 1);
    let states = quantum_run(&r, 6).unwrap();
    for eps in [1, -1] {
        let back = quantum_mutate(&states[1], 0, eps).unwrap();
        for (i, y) in back.ys.iter().enumerate() {
            assert_agree(&format!("Y{}", i + 1), y, &QLaurentElement::generator(states[0].context(), i));
        }
        assert_eq!(back.b, states[0].b);
    }
}

#[test]
fn a2_universal_identity_with_printed_arguments() {
    let r = run(1, 1, 5);
    assert_eq!(r.eps, vec![1, 1, -1, -1, -1]);
    let states = quantum_run(&r, 8).unwrap();
    let c = states[0].context().clone();
    let args = [
        mono(&c, Y1),
        mul(&[&mono(&c, Y2), &el(&c, &[(1, Z, ONE), (1, (-1, 1), Y1)])]),
        mul(&[&inv(&el(&c, &[(1, Z, ONE), (1, (-1, 1), Y2), (1, Z, Y1Y2)])), &mono(&c, Y1)]),
        mul(&[
            &el(&c, &[(1, (-1, 1), ONE)]),
            &inv(&el(&c, &[(1, Z, ONE), (1, (-1, 1), Y2)])),
            &mono(&c, &[(1, 1), (0, 1)]),
        ]),
        mono(&c, Y2),
    ];
    let mut prod = QLaurentElement::one(&c);
    for (s, arg) in args.iter().enumerate() {
        let k = r.word.dirs[s];
        let yt = &states[s].ys[k];
        let from_run = if r.eps[s] > 0 { yt.clone() } else { inv(yt) };
        assert_agree(&format!("argument {s}"), &from_run, arg);
        prod = prod.mul(&psi_q_power(arg, 1, r.eps[s]).unwrap()).unwrap();
    }
    assert_agree("product", &prod, &QLaurentElement::one(&c));
}

fn b2_printed(c: &Arc<QContext>) -> [QLaurentElement; 6] {
    let h = |n: i64| (n, 2);
    let y1y2y2: &[(usize, i32)] = &[(0, 1), (1, 2)];
    [
        mono(c, Y1),
        mul(&[&mono(c, Y2), &el(c, &[(1, Z, ONE), (1, (-1, 1), Y1)])]),
        mul(&[
            &mono(c, &[(0, -1)]),
            &el(c, &[(1, Z, ONE), (1, h(-1), Y2), (1, h(1), Y1Y2)]),
            &el(c, &[(1, Z, ONE), (1, h(-3), Y2), (1, h(-1), Y1Y2)]),
        ]),
        mul(&[
            &el(c, &[(1, (1, 1), &[(0, -1), (1, -1)])]),
            &el(c, &[(1, Z, ONE), (1, h(-1), Y2), (1, h(-3), Y2), (1, (-2, 1), &[(1, 2)]), (1, (1, 1), y1y2y2)]),
        ]),
        mul(&[
            &el(c, &[(1, (2, 1), &[(0, -1), (1, -2)])]),
            &el(c, &[(1, Z, ONE), (1, h(-1), Y2)]),
            &el(c, &[(1, Z, ONE), (1, h(-3), Y2)]),
        ]),
        mono(c, &[(1, -1)]),
    ]
}

#[test]
fn b2_printed_y_tilde_list() {
    let r = run(1, 2, 6);
    let states = quantum_run(&r, 7).unwrap();
    let c = states[0].context().clone();
    assert_eq!(c.d(), 2);
    for (s, want) in b2_printed(&c).iter().enumerate() {
        let k = r.word.dirs[s];
        assert_agree(&format!("Ỹ{}({s})", k + 1), &states[s].ys[k], want);
    }
}

#[test]
fn b2_universal_identity_in_printed_form() {
    let states: Vec<QState> = quantum_run(&run(1, 2, 6), 7).unwrap();
    let c = states[0].context().clone();
    let y = b2_printed(&c);
    // q = t², q^{1/2} = t.
    let psi = |x: &QLaurentElement, r: i64| psi_q_power(x, r, 1).unwrap();
    let lhs = mul(&[&psi(&y[0], 2), &psi(&y[1], 1)]);
    let rhs = mul(&[&psi(&inv(&y[5]), 1), &psi(&inv(&y[4]), 2), &psi(&inv(&y[3]), 1), &psi(&inv(&y[2]), 2)]);
    assert_agree("B2 identity", &lhs, &rhs);
}

#[test]
fn half_integral_arguments_need_the_right_root() {
    let c = QContext::commutative(2, 3);
    assert!(matches!(q_poly(&c, &[(1, BigRational::new(1.into(), 2.into()))]), Err(QuantumError::BadQuantumData { .. })));
}
