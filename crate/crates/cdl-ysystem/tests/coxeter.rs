use cdl_seed::{DynkinType, Family};
use cdl_ysystem::{coxeter_orbit, longest_element_check, RootVector};

fn rv(v: Vec<i64>) -> RootVector {
    RootVector { coords: v }
}

/// `[i,j] = α_i + … + α_j` (1-indexed).
fn seg(r: usize, i: usize, j: usize) -> RootVector {
    rv((1..=r).map(|c| (i <= c && c <= j) as i64).collect())
}

/// D-type `[i; ends]`: `α_i + … + α_{r−2}` plus the listed branch roots.
fn dsemi(r: usize, i: usize, ends: &[usize]) -> RootVector {
    rv((1..=r).map(|c| ((i <= c && c <= r - 2) || ends.contains(&c)) as i64).collect())
}

/// D-type `{i,j} = α_i + … + α_{j−1} + 2α_j + … + 2α_{r−2} + α_{r−1} + α_r`.
fn dbrace(r: usize, i: usize, j: usize) -> RootVector {
    rv((1..=r)
        .map(|c| {
            if c >= r - 1 {
                1
            } else if c >= j {
                2
            } else {
                (c >= i) as i64
            }
        })
        .collect())
}

/// E6 root from its coefficients on `α_1 … α_6`.
fn e6(s: &str) -> RootVector {
    rv(s.bytes().map(|b| (b - b'0') as i64).collect())
}

fn orbit(x: &DynkinType, a: usize) -> Vec<RootVector> {
    // Drop α(a;−1) so that index k is α(a;k).
    coxeter_orbit(x, a - 1, 1).unwrap()[1..].to_vec()
}

fn check_prefix(x: &DynkinType, a: usize, printed: &[RootVector]) {
    let o = orbit(x, a);
    assert_eq!(&o[..printed.len()], printed, "{} vertex {a}", x.name());
}

fn check_last(x: &DynkinType, a: usize, last: RootVector) {
    assert_eq!(orbit(x, a)[x.coxeter_number - 1], last, "{} vertex {a}", x.name());
}

#[test]
fn a5_orbits_and_relation() {
    let x = DynkinType::new(Family::A, 5).unwrap();
    let s = |i, j| seg(5, i, j);
    check_prefix(&x, 1, &[s(1, 1), s(1, 2), s(2, 3), s(3, 4), s(4, 5), s(5, 5)]);
    check_prefix(&x, 2, &[s(2, 2), s(1, 3), s(1, 4), s(2, 5), s(3, 5), s(4, 4)]);
    check_prefix(&x, 3, &[s(3, 3), s(2, 4), s(1, 5), s(1, 5), s(2, 4), s(3, 3)]);
    // Vertices 4 and 5 read the sequences of 2 and 1 backwards.
    check_prefix(&x, 4, &[s(4, 4), s(3, 5), s(2, 5), s(1, 4), s(1, 3), s(2, 2)]);
    check_prefix(&x, 5, &[s(5, 5), s(4, 5), s(3, 4), s(2, 3), s(1, 2), s(1, 1)]);
    let (o1, o2, o3) = (orbit(&x, 1), orbit(&x, 2), orbit(&x, 3));
    assert_eq!(&o2[4] + &o2[2], &o1[3] + &o3[3]);
    assert_eq!(&s(3, 5) + &s(1, 4), &s(3, 4) + &s(1, 5));
    assert_eq!((o2[4].clone(), o2[2].clone(), o1[3].clone(), o3[3].clone()), (s(3, 5), s(1, 4), s(3, 4), s(1, 5)));
}

#[test]
fn a6_orbits() {
    let x = DynkinType::new(Family::A, 6).unwrap();
    let s = |i, j| seg(6, i, j);
    check_prefix(&x, 1, &[s(1, 1), s(1, 2), s(2, 3), s(3, 4), s(4, 5), s(5, 6), s(6, 6)]);
    check_prefix(&x, 2, &[s(2, 2), s(1, 3), s(1, 4), s(2, 5), s(3, 6), s(4, 6), s(5, 5)]);
    check_prefix(&x, 3, &[s(3, 3), s(2, 4), s(1, 5), s(1, 6), s(2, 6), s(3, 5), s(4, 4)]);
}

#[test]
fn d5_orbits_and_relation() {
    let x = DynkinType::new(Family::D, 5).unwrap();
    let s = |i, j| seg(5, i, j);
    let d = |i, e: &[usize]| dsemi(5, i, e);
    let b = |i, j| dbrace(5, i, j);
    check_prefix(&x, 1, &[s(1, 1), s(1, 2), s(2, 3), d(3, &[4, 5]), d(3, &[4, 5]), s(2, 3), s(1, 2), s(1, 1)]);
    check_prefix(&x, 2, &[s(2, 2), s(1, 3), d(1, &[4, 5]), b(2, 3), b(2, 3), d(1, &[4, 5]), s(1, 3), s(2, 2)]);
    check_prefix(&x, 3, &[s(3, 3), d(2, &[4, 5]), b(1, 3), b(1, 2), b(1, 2), b(1, 3), d(2, &[4, 5]), s(3, 3)]);
    check_prefix(&x, 4, &[s(4, 4), d(3, &[4]), d(2, &[5]), d(1, &[5]), d(1, &[4]), d(2, &[4]), d(3, &[5]), s(5, 5)]);
    let o: Vec<Vec<RootVector>> = (1..=5).map(|a| orbit(&x, a)).collect();
    let lhs = &o[2][4] + &o[2][2];
    let rhs = &(&o[1][3] + &o[3][3]) + &o[4][3];
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, &b(1, 2) + &b(1, 3));
    assert_eq!(rhs, &(&b(2, 3) + &d(1, &[5])) + &d(1, &[4]));
}

#[test]
fn d6_printed_parts() {
    let x = DynkinType::new(Family::D, 6).unwrap();
    let s = |i, j| seg(6, i, j);
    let d = |i, e: &[usize]| dsemi(6, i, e);
    let b = |i, j| dbrace(6, i, j);
    check_prefix(&x, 1, &[s(1, 1), s(1, 2), s(2, 3), s(3, 4), d(4, &[5, 6]), d(4, &[5, 6])]);
    check_prefix(&x, 2, &[s(2, 2), s(1, 3), s(1, 4), d(2, &[5, 6]), b(3, 4), b(3, 4)]);
    check_prefix(&x, 3, &[s(3, 3), s(2, 4), d(1, &[5, 6]), b(1, 4), b(2, 3), b(2, 3)]);
    check_prefix(&x, 4, &[s(4, 4), d(3, &[5, 6]), b(2, 4), b(1, 3), b(1, 2), b(1, 2)]);
    check_prefix(&x, 5, &[s(5, 5), d(4, &[5]), d(3, &[6]), d(2, &[6]), d(1, &[5]), d(1, &[5])]);
    check_prefix(&x, 6, &[s(6, 6), d(4, &[6]), d(3, &[5]), d(2, &[5]), d(1, &[6]), d(1, &[6])]);
    for a in 1..=6 {
        check_last(&x, a, s(a, a));
    }
}

#[test]
fn e6_orbits_and_relation() {
    let x = DynkinType::new(Family::E, 6).unwrap();
    let list = |v: &[&str]| v.iter().map(|s| e6(s)).collect::<Vec<_>>();
    check_prefix(
        &x,
        1,
        &list(&["100000", "110000", "011000", "001110", "001111", "011011", "111010", "111100", "011100", "001010", "000011", "000001"]),
    );
    check_prefix(
        &x,
        2,
        &list(&["010000", "111000", "111110", "012111", "012121", "112121", "122111", "122110", "112110", "011111", "001011", "000010"]),
    );
    check_prefix(&x, 3, &list(&["001000", "011110", "112111", "122121", "123121", "123221", "123221"]));
    check_last(&x, 3, e6("001000"));
    check_prefix(&x, 4, &list(&["000100", "001100", "011010", "111011", "111111", "012110", "012110"]));
    check_last(&x, 4, e6("000100"));
    let o: Vec<Vec<RootVector>> = (1..=6).map(|a| orbit(&x, a)).collect();
    // Neighbours of 3 are 2, 4 and 5.
    assert_eq!(&o[2][4] + &o[2][2], &(&o[1][3] + &o[3][3]) + &o[4][3]);
    assert_eq!(&e6("123121") + &e6("112111"), &(&e6("012111") + &e6("112110")) + &e6("111011"));
    assert_eq!((o[2][4].clone(), o[1][3].clone(), o[4][3].clone()), (e6("123121"), e6("012111"), e6("112110")));
}

fn ade_up_to(rank: usize) -> Vec<DynkinType> {
    let mut v: Vec<DynkinType> = (1..=rank).filter_map(|r| DynkinType::new(Family::A, r)).collect();
    v.extend((4..=rank).filter_map(|r| DynkinType::new(Family::D, r)));
    v.extend((6..=rank.min(8)).filter_map(|r| DynkinType::new(Family::E, r)));
    v
}

#[test]
fn longest_element_and_positivity() {
    for x in ade_up_to(8) {
        longest_element_check(&x).unwrap();
        for first in [1, -1] {
            for a in 0..x.rank {
                let o = coxeter_orbit(&x, a, first).unwrap();
                assert!(o[1..=x.coxeter_number].iter().all(RootVector::is_positive), "{} vertex {}", x.name(), a + 1);
            }
        }
    }
}

#[test]
fn non_simply_laced_rejected() {
    assert!(coxeter_orbit(&DynkinType::new(Family::B, 3).unwrap(), 0, 1).is_err());
}
