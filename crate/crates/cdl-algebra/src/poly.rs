use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::{AlgebraError, ExpVector};

/// A polynomial in `nvars` variables with big-rational coefficients.
///
/// Terms are kept in graded-lex order with no zero coefficients, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<ExpVector, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(ExpVector::zeros(nvars), c)
    }

    pub fn term(exp: ExpVector, c: BigRational) -> Self {
        let mut p = Self::zero(exp.dim());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The monomial `y^exp` with coefficient 1.
    pub fn monomial(exp: ExpVector) -> Self {
        Self::term(exp, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExpVector::unit(nvars, i))
    }

    /// Builds a polynomial from `(exponents, integer coefficient)` pairs.
    pub fn from_int_terms(nvars: usize, terms: &[(&[i32], i64)]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(ExpVector(e.to_vec()), BigRational::from_integer(BigInt::from(*c)));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVector) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&ExpVector::zeros(self.nvars))
    }

    pub fn leading_term(&self) -> Option<(&ExpVector, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn trailing_term(&self) -> Option<(&ExpVector, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.leading_term().map(|(e, _)| e.degree())
    }

    pub fn add_term(&mut self, e: ExpVector, c: BigRational) {
        debug_assert_eq!(e.dim(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `y^shift`; every resulting exponent must stay nonnegative.
    pub fn shift(&self, shift: &ExpVector) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| {
                    let s = e + shift;
                    debug_assert!(s.is_nonnegative());
                    (s, a.clone())
                })
                .collect(),
        }
    }

    /// Componentwise minimum of all exponents (the monomial content).
    pub fn min_exponents(&self) -> ExpVector {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(e) => e.clone(),
            None => return ExpVector::zeros(self.nvars),
        };
        it.fold(first, |m, e| m.cwise_min(e))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut v = vec![0; self.nvars];
            for (i, &x) in e.0.iter().enumerate() {
                v[perm[i]] = x;
            }
            p.terms.insert(ExpVector(v), c.clone());
        }
        p
    }

    /// Evaluates at a point in floating point.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (x, &k) in point.iter().zip(&e.0) {
                if k != 0 {
                    t *= x.powi(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Canonical JSON: `[[exponents], "num", "den"]` in graded-lex order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!([e.0, c.numer().to_string(), c.denom().to_string()]))
                .collect(),
        )
    }

    pub fn from_json(nvars: usize, v: &Value) -> Result<Self, AlgebraError> {
        let bad = |m: &str| AlgebraError::Malformed(m.to_string());
        let arr = v.as_array().ok_or_else(|| bad("polynomial must be an array"))?;
        let mut p = Self::zero(nvars);
        for t in arr {
            let t = t.as_array().ok_or_else(|| bad("term must be an array"))?;
            if t.len() != 3 {
                return Err(bad("term must have three entries"));
            }
            let e: Vec<i32> = t[0]
                .as_array()
                .ok_or_else(|| bad("exponents must be an array"))?
                .iter()
                .map(|x| x.as_i64().map(|x| x as i32).ok_or_else(|| bad("exponent")))
                .collect::<Result<_, _>>()?;
            if e.len() != nvars || e.iter().any(|&x| x < 0) {
                return Err(bad("exponent vector"));
            }
            let num: BigInt = t[1].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("numerator"))?;
            let den: BigInt = t[2].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("denominator"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            p.add_term(ExpVector(e), BigRational::new(num, den));
        }
        Ok(p)
    }
}

/// Exact quotient `num / den` by long division on graded-lex leading terms.
pub fn exact_div(num: &MultiPoly, den: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    assert_eq!(num.nvars, den.nvars);
    let (lde, ldc) = match den.leading_term() {
        Some((e, c)) => (e.clone(), c.clone()),
        None => return Err(AlgebraError::NonDivisible),
    };
    let mut rem = num.clone();
    let mut quot = MultiPoly::zero(num.nvars);
    while let Some((re, rc)) = rem.leading_term() {
        if !lde.divides(re) {
            return Err(AlgebraError::NonDivisible);
        }
        let qe = re - &lde;
        let qc = rc / &ldc;
        for (e, c) in &den.terms {
            rem.add_term(e + &qe, -(c * &qc));
        }
        quot.add_term(qe, qc);
    }
    Ok(quot)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                p.add_term(ea + eb, ca * cb);
            }
        }
        p
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if e.is_zero() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{a}*{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(nvars: usize, terms: &[(&[i32], i64)]) -> MultiPoly {
        MultiPoly::from_int_terms(nvars, terms)
    }

    #[test]
    fn divide_constructed_product() {
        let a = p(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = p(2, &[(&[0, 0], 1), (&[0, 1], 1)]);
        assert_eq!(exact_div(&(&a * &b), &a).unwrap(), b);
    }

    #[test]
    fn divide_expanded_product() {
        let num = p(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        let den = p(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        assert_eq!(exact_div(&num, &den).unwrap(), p(2, &[(&[0, 0], 1), (&[0, 1], 1)]));
    }

    #[test]
    fn remainder_is_an_error() {
        let num = p(2, &[(&[0, 0], 1), (&[1, 1], 1)]);
        let den = p(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        assert_eq!(exact_div(&num, &den), Err(AlgebraError::NonDivisible));
    }

    #[test]
    fn json_round_trip() {
        let a = p(3, &[(&[0, 0, 0], 1), (&[1, 0, 2], 3)]).scale(&crate::rat(1, 2));
        let j = a.to_json();
        assert_eq!(j, serde_json::json!([[[0, 0, 0], "1", "2"], [[1, 0, 2], "3", "2"]]));
        assert_eq!(MultiPoly::from_json(3, &j).unwrap(), a);
    }

    #[test]
    fn display_terms() {
        let a = p(2, &[(&[0, 0], 1), (&[0, 1], 2), (&[1, 1], -1)]);
        assert_eq!(a.to_string(), "1 + 2*y2 - y1*y2");
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0i32..3, 0i32..3, 0i32..3), -4i64..5), 1..6).prop_map(|ts| {
            let mut q = MultiPoly::zero(3);
            for ((a, b, c), k) in ts {
                q.add_term(ExpVector(vec![a, b, c]), crate::int(k));
            }
            q
        })
    }

    proptest! {
        #[test]
        fn div_round_trip(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(exact_div(&prod, &b).unwrap(), a);
        }

        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }
    }
}
