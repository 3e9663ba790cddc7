//! Exact coefficients in `Q(t)`, where `t` stands for a fixed root `q^{1/d}`.
//!
//! Denominators are kept factored into cyclotomic polynomials, which covers
//! every denominator produced by q-numbers and q-factorials and keeps
//! reduction to lowest terms cheap.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::rc::Rc;

use cdl_algebra::{BigInt, BigRational};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn p_add(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out: Poly = (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

fn p_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn p_scale(a: &[BigRational], c: &BigRational) -> Poly {
    let mut out: Poly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// Multiplies by `t^k`.
fn p_shift(a: &[BigRational], k: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); k];
    out.extend_from_slice(a);
    out
}

fn p_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let lead = b.last().expect("division by the zero polynomial");
    let mut rem: Poly = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= &c * y;
        }
        quot[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Monic gcd by the Euclidean algorithm.
fn p_gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = p_divrem(&x, &y);
        x = y;
        y = r;
    }
    match x.last() {
        Some(l) => {
            let inv = l.recip();
            p_scale(&x, &inv)
        }
        None => x,
    }
}

fn p_eval_one(a: &[BigRational]) -> BigRational {
    a.iter().fold(BigRational::zero(), |s, c| s + c)
}

fn low_order(a: &[BigRational]) -> usize {
    a.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

thread_local! {
    static CYCLOTOMIC: RefCell<Vec<Rc<Vec<i64>>>> = RefCell::new(vec![Rc::new(Vec::new())]);
}

/// Exact quotient of integer polynomials by a monic divisor.
fn i_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let mut quot = vec![0; a.len() + 1 - b.len()];
    for k in (0..quot.len()).rev() {
        let c = rem[k + b.len() - 1];
        quot[k] = c;
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= c * y;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// The cyclotomic polynomial `Φ_n`, lowest degree first.
pub(crate) fn cyclotomic(n: u32) -> Rc<Vec<i64>> {
    CYCLOTOMIC.with(|cache| {
        let mut cache = cache.borrow_mut();
        while cache.len() <= n as usize {
            let m = cache.len();
            let mut p = vec![0i64; m + 1];
            p[0] = -1;
            p[m] = 1;
            for d in 1..m {
                if m % d == 0 {
                    p = i_div_monic(&p, &cache[d]);
                }
            }
            cache.push(Rc::new(p));
        }
        cache[n as usize].clone()
    })
}

fn totient(n: u32) -> u32 {
    let (mut m, mut out, mut p) = (n, n, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn to_rational_poly(p: &[i64]) -> Poly {
    p.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}

/// `a / b` for a monic integer `b`, if the division is exact.
fn div_monic(a: &[BigRational], b: &[i64]) -> Option<Poly> {
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len() + 1 - b.len()];
    for k in (0..quot.len()).rev() {
        let c = rem[k + b.len() - 1].clone();
        if !c.is_zero() {
            for (i, &y) in b.iter().enumerate() {
                if y != 0 {
                    rem[k + i] -= &c * BigInt::from(y);
                }
            }
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

/// A floating-point image of a polynomial, used to rule out cyclotomic roots cheaply.
struct Approx {
    coeffs: Vec<f64>,
    scale: f64,
}

impl Approx {
    fn new(p: &[BigRational]) -> Self {
        let coeffs: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        let scale = coeffs.iter().map(|c| c.abs()).sum();
        Approx { coeffs, scale }
    }

    /// `false` only if `p(e^{2πi/n}) ≠ 0`.
    fn may_vanish_at_root(&self, n: u32) -> bool {
        if !self.scale.is_finite() {
            return true;
        }
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let theta = TAU * ((k as u64 % n as u64) as f64) / n as f64;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        re.hypot(im) <= 1e-6 * self.scale
    }
}

/// Removes the factor `Φ_n` from `p` as often as it divides.
fn strip_cyclotomic(p: &mut Poly, n: u32, approx: &mut Approx, limit: Option<u32>) -> u32 {
    let phi = cyclotomic(n);
    let mut e = 0;
    while limit.is_none_or(|l| e < l) && approx.may_vanish_at_root(n) {
        match div_monic(p, &phi) {
            Some(q) => {
                *p = q;
                *approx = Approx::new(p);
                e += 1;
            }
            None => break,
        }
    }
    e
}

/// Splits `p` (nonzero constant term) into its cyclotomic factors and the rest.
fn split_cyclotomic(mut p: Poly) -> (BTreeMap<u32, u32>, Poly) {
    let mut cyc = BTreeMap::new();
    let mut approx = Approx::new(&p);
    let mut n = 1;
    // φ(n) ≥ √(n/2), so no Φ_n with n > 2·deg² can divide.
    while p.len() > 1 && (n as usize) <= 2 * (p.len() - 1) * (p.len() - 1) {
        if (totient(n) as usize) < p.len() {
            let e = strip_cyclotomic(&mut p, n, &mut approx, None);
            if e > 0 {
                cyc.insert(n, e);
            }
        }
        n += 1;
    }
    (cyc, p)
}

/// `t^val · num / (Π Φ_n^{e_n} · rest)` in lowest terms: `num` has a nonzero
/// constant term and no common factor with the denominator, and `rest` is
/// monic with no cyclotomic factor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QCoeff {
    val: i64,
    num: Poly,
    cyc: BTreeMap<u32, u32>,
    rest: Poly,
}

impl QCoeff {
    pub fn zero() -> Self {
        QCoeff { val: 0, num: Vec::new(), cyc: BTreeMap::new(), rest: vec![BigRational::one()] }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QCoeff { num: vec![c], ..Self::zero() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        QCoeff { val: k, ..Self::one() }
    }

    /// `1/(t^k − 1)` for `k ≠ 0`, built in factored form.
    pub fn recip_t_pow_minus_one(k: i64) -> Self {
        assert!(k != 0, "pole of 1/(t^0 − 1)");
        let m = k.unsigned_abs() as u32;
        let cyc = (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| (d, 1)).collect();
        let x = QCoeff { cyc, ..Self::one() };
        // 1/(t^{−m} − 1) = −t^m/(t^m − 1).
        if k > 0 {
            x
        } else {
            x.neg().mul_t(m as i64)
        }
    }

    /// The Laurent polynomial `Σ cᵢ t^{low+i}`.
    pub fn laurent(low: i64, coeffs: &[i64]) -> Self {
        let num = coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        Self::normalize(low, num, BTreeMap::new(), vec![BigRational::one()])
    }

    fn normalize(mut val: i64, mut num: Poly, mut cyc: BTreeMap<u32, u32>, mut rest: Poly) -> Self {
        trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        let k = low_order(&num);
        if k > 0 {
            num.drain(..k);
            val += k as i64;
        }
        if !cyc.is_empty() && num.len() > 1 {
            let mut approx = Approx::new(&num);
            for (&n, e) in cyc.iter_mut() {
                *e -= strip_cyclotomic(&mut num, n, &mut approx, Some(*e));
            }
            cyc.retain(|_, e| *e > 0);
        }
        if rest.len() > 1 && num.len() > 1 {
            let g = p_gcd(&num, &rest);
            if g.len() > 1 {
                num = p_divrem(&num, &g).0;
                rest = p_divrem(&rest, &g).0;
            }
        }
        QCoeff { val, num, cyc, rest }
    }

    /// The expanded denominator, without the power of `t`.
    fn den(&self) -> Poly {
        let mut out = self.rest.clone();
        for (&n, &e) in &self.cyc {
            let phi = to_rational_poly(&cyclotomic(n));
            for _ in 0..e {
                out = p_mul(&out, &phi);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.num.len() == 1 && self.num[0].is_one() && self.is_laurent_polynomial()
    }

    /// Whether the value is a Laurent polynomial in `t`.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.cyc.is_empty() && self.rest.len() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let v = self.val.min(other.val);
        let mut a = p_shift(&self.num, (self.val - v) as usize);
        let mut b = p_shift(&other.num, (other.val - v) as usize);
        let mut cyc = self.cyc.clone();
        for (&n, &e) in &other.cyc {
            let slot = cyc.entry(n).or_insert(0);
            *slot = (*slot).max(e);
        }
        for (&n, &e) in &cyc {
            let phi = to_rational_poly(&cyclotomic(n));
            for _ in self.cyc.get(&n).copied().unwrap_or(0)..e {
                a = p_mul(&a, &phi);
            }
            for _ in other.cyc.get(&n).copied().unwrap_or(0)..e {
                b = p_mul(&b, &phi);
            }
        }
        let rest = if self.rest == other.rest {
            self.rest.clone()
        } else {
            a = p_mul(&a, &other.rest);
            b = p_mul(&b, &self.rest);
            p_mul(&self.rest, &other.rest)
        };
        Self::normalize(v, p_add(&a, &b), cyc, rest)
    }

    pub fn neg(&self) -> Self {
        QCoeff { num: self.num.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut cyc = self.cyc.clone();
        for (&n, &e) in &other.cyc {
            *cyc.entry(n).or_insert(0) += e;
        }
        let rest = p_mul(&self.rest, &other.rest);
        let num = p_mul(&self.num, &other.num);
        if self.num.len() == 1 && other.num.len() == 1 {
            return QCoeff { val: self.val + other.val, num, cyc, rest };
        }
        Self::normalize(self.val + other.val, num, cyc, rest)
    }

    /// Multiplies by `t^k`.
    pub fn mul_t(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        QCoeff { val: self.val + k, ..self.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QCoeff { num: p_scale(&self.num, c), ..self.clone() }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let (cyc, rest) = if self.num.len() == 1 { (BTreeMap::new(), self.num.clone()) } else { split_cyclotomic(self.num.clone()) };
        let lead = rest.last().unwrap().recip();
        QCoeff { val: -self.val, num: p_scale(&self.den(), &lead), cyc, rest: p_scale(&rest, &lead) }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::one(), |acc, _| acc.mul(&base))
    }

    /// The value at `t = 1`, or `None` at a pole.
    pub fn eval_at_one(&self) -> Option<BigRational> {
        if self.cyc.contains_key(&1) {
            return None;
        }
        Some(p_eval_one(&self.num) / p_eval_one(&self.den()))
    }

    /// Numerator and denominator coefficient arrays with the power of `t`
    /// folded in.
    pub fn to_arrays(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        if self.val >= 0 {
            (p_shift(&self.num, self.val as usize), self.den())
        } else {
            (self.num.clone(), p_shift(&self.den(), (-self.val) as usize))
        }
    }

    /// `{"d": d, "num": [...], "den": [...]}`, coefficients lowest degree first.
    pub fn to_json(&self, d: i64) -> Value {
        let (num, den) = self.to_arrays();
        let arr = |p: Vec<BigRational>| p.iter().map(rational_json).collect::<Vec<_>>();
        json!({ "d": d, "num": arr(num), "den": arr(den) })
    }
}

fn rational_json(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Ok(v) = i64::try_from(x.to_integer()) {
            return json!(v);
        }
    }
    json!(x.to_string())
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &[BigRational], shift: i64) -> fmt::Result {
    let mut first = true;
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = i as i64 + shift;
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        match (mag.is_one(), e) {
            (_, 0) => write!(f, "{mag}")?,
            (true, 1) => write!(f, "t")?,
            (true, _) => write!(f, "t^{e}")?,
            (false, 1) => write!(f, "{mag}t")?,
            (false, _) => write!(f, "{mag}t^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent_polynomial() {
            return write_poly(f, &self.num, self.val);
        }
        write!(f, "(")?;
        write_poly(f, &self.num, self.val.max(0))?;
        write!(f, ")/(")?;
        write_poly(f, &self.den(), (-self.val).max(0))?;
        write!(f, ")")
    }
}

impl fmt::Debug for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cdl_algebra::{int, rat};

    #[test]
    fn cancellation_and_normal_form() {
        // (t² − 1)/(t − 1) = t + 1.
        let a = QCoeff::laurent(0, &[-1, 0, 1]).div(&QCoeff::laurent(0, &[-1, 1]));
        assert_eq!(a, QCoeff::laurent(0, &[1, 1]));
        assert!(a.is_laurent_polynomial());
        // t/(2t² − 2t) = 1/(2(t − 1)).
        let b = QCoeff::t_pow(1).div(&QCoeff::laurent(1, &[-2, 2]));
        assert_eq!(b.mul(&QCoeff::laurent(0, &[-2, 2])), QCoeff::one());
        assert_eq!(b.eval_at_one(), None);
        assert_eq!(QCoeff::laurent(-3, &[1, 0, 2]).eval_at_one(), Some(int(3)));
    }

    #[test]
    fn field_operations() {
        let x = QCoeff::laurent(-1, &[1, 3]).div(&QCoeff::laurent(0, &[2, 0, 1]));
        let y = QCoeff::laurent(2, &[5, -1]).div(&QCoeff::laurent(0, &[1, 1]));
        assert_eq!(x.add(&y).sub(&y), x);
        assert_eq!(x.mul(&y).div(&y), x);
        assert_eq!(x.mul(&x.inv()), QCoeff::one());
        assert_eq!(x.pow(3).mul(&x.pow(-3)), QCoeff::one());
        assert!(x.sub(&x).is_zero());
        // (t⁶ − 1)/(t² − 1) = Φ₃Φ₆ = t⁴ + t² + 1.
        let c = QCoeff::laurent(0, &[-1, 0, 0, 0, 0, 0, 1]).div(&QCoeff::laurent(0, &[-1, 0, 1]));
        assert_eq!(c, QCoeff::laurent(0, &[1, 0, 1, 0, 1]));
        let z = QCoeff::laurent(0, &[1, 1]).div(&QCoeff::laurent(0, &[-1, 0, 1]));
        assert_eq!(z.add(&QCoeff::one().div(&QCoeff::laurent(0, &[1, -1]))), QCoeff::zero());
        assert_eq!(QCoeff::from_rational(rat(1, 2)).scale(&int(2)), QCoeff::one());
    }

    #[test]
    fn serialization_folds_the_power_of_t() {
        let x = QCoeff::t_pow(-2).mul(&QCoeff::laurent(0, &[1, 1]));
        assert_eq!(x.to_json(2), json!({"d": 2, "num": [1, 1], "den": [0, 0, 1]}));
        assert_eq!(x.to_string(), "t^-1 + t^-2");
        assert_eq!(QCoeff::laurent(-1, &[1, 0, -2]).to_string(), "-2t + t^-1");
    }
}
