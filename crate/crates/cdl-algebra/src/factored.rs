use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::{atom, intern, AlgebraError, AtomId, ExpVector, LaurentMonomial, MultiPoly};

/// A subtraction-free rational value `scalar * y^monomial * prod atom^exp`.
///
/// Atoms have no monomial content and their graded-lex smallest term has
/// coefficient 1, which for F-polynomials means constant term 1. The scalar
/// stays 1 for every value produced by mutation; it only absorbs leading
/// coefficients of arbitrary polynomials fed to [`FactoredSF::from_poly`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredSF {
    monomial: LaurentMonomial,
    scalar: BigRational,
    factors: BTreeMap<AtomId, i32>,
}

impl FactoredSF {
    pub fn one(nvars: usize) -> Self {
        Self::from_monomial(ExpVector::zeros(nvars))
    }

    pub fn from_monomial(m: LaurentMonomial) -> Self {
        FactoredSF { monomial: m, scalar: BigRational::one(), factors: BTreeMap::new() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_monomial(ExpVector::unit(nvars, i))
    }

    /// Splits `p` into content monomial, scalar and one interned atom.
    pub fn from_poly(p: &MultiPoly) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroFactor);
        }
        let content = p.min_exponents();
        let q = p.shift(&-&content);
        let lead = q.trailing_term().map(|(_, c)| c.clone()).unwrap();
        let mut f = FactoredSF { monomial: content, scalar: lead.clone(), factors: BTreeMap::new() };
        if q.nterms() > 1 {
            let a = q.scale(&lead.recip());
            f.factors.insert(intern(a), 1);
        }
        Ok(f)
    }

    /// `y^m * prod F^e` for polynomials with constant term 1 and at least one more term.
    pub fn from_parts(m: LaurentMonomial, polys: &[(&MultiPoly, i32)]) -> Result<Self, AlgebraError> {
        let mut f = Self::from_monomial(m);
        for (p, e) in polys {
            if *e != 0 {
                f = f.mul(&Self::from_poly(p)?.pow(*e));
            }
        }
        Ok(f)
    }

    pub fn nvars(&self) -> usize {
        self.monomial.dim()
    }

    pub fn monomial(&self) -> &LaurentMonomial {
        &self.monomial
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn factors(&self) -> &BTreeMap<AtomId, i32> {
        &self.factors
    }

    pub fn is_monomial(&self) -> bool {
        self.factors.is_empty() && self.scalar.is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut f = FactoredSF {
            monomial: &self.monomial + &other.monomial,
            scalar: &self.scalar * &other.scalar,
            factors: self.factors.clone(),
        };
        for (&a, &e) in &other.factors {
            let slot = f.factors.entry(a).or_insert(0);
            *slot += e;
            if *slot == 0 {
                f.factors.remove(&a);
            }
        }
        f
    }

    pub fn inv(&self) -> Self {
        FactoredSF {
            monomial: -&self.monomial,
            scalar: self.scalar.recip(),
            factors: self.factors.iter().map(|(&a, &e)| (a, -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return Self::one(self.nvars());
        }
        let s = if k > 0 {
            num_traits::pow(self.scalar.clone(), k as usize)
        } else {
            num_traits::pow(self.scalar.recip(), (-k) as usize)
        };
        FactoredSF {
            monomial: self.monomial.scale(k),
            scalar: s,
            factors: self.factors.iter().map(|(&a, &e)| (a, e * k)).collect(),
        }
    }

    /// Image under the tropical semifield map fixing the generators.
    ///
    /// Atoms are content-free, so each contributes the trivial monomial.
    pub fn tropicalize(&self) -> LaurentMonomial {
        self.monomial.clone()
    }

    /// Numerator and denominator polynomials of the value.
    pub fn expand(&self) -> (MultiPoly, MultiPoly) {
        let n = self.nvars();
        let mut num = MultiPoly::term(self.monomial.pos_part(), self.scalar.clone());
        let mut den = MultiPoly::monomial((-&self.monomial).pos_part());
        for (&a, &e) in &self.factors {
            let p = atom(a);
            if e > 0 {
                num = &num * &p.pow(e as u32);
            } else {
                den = &den * &p.pow((-e) as u32);
            }
        }
        debug_assert_eq!(num.nvars(), n);
        (num, den)
    }

    /// Equality as rational functions, independent of how atoms were split.
    pub fn value_eq(&self, other: &Self) -> bool {
        if self == other {
            return true;
        }
        let (a, b) = self.expand();
        let (c, d) = other.expand();
        &a * &d == &c * &b
    }

    /// Relabels variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut m = vec![0; self.nvars()];
        for (i, &e) in self.monomial.0.iter().enumerate() {
            m[perm[i]] = e;
        }
        let mut f = FactoredSF::from_monomial(ExpVector(m));
        f.scalar = self.scalar.clone();
        for (&a, &e) in &self.factors {
            let p = atom(a).permute_vars(perm);
            f = f.mul(&FactoredSF::from_poly(&p).unwrap().pow(e));
        }
        f
    }

    /// Evaluates at a point with positive coordinates.
    pub fn eval_positive(&self, point: &[f64]) -> Result<f64, AlgebraError> {
        self.eval_with(point, |a| atom(a).eval_f64(point))
    }

    /// Evaluation with a caller-supplied atom evaluator (for caching across many values).
    pub fn eval_with(&self, point: &[f64], mut atom_value: impl FnMut(AtomId) -> f64) -> Result<f64, AlgebraError> {
        debug_assert!(point.iter().all(|&x| x > 0.0));
        let mut v = self.scalar.to_f64().ok_or(AlgebraError::Overflow)?;
        for (x, &e) in point.iter().zip(&self.monomial.0) {
            if e != 0 {
                v *= x.powi(e);
            }
        }
        for (&a, &e) in &self.factors {
            let av = atom_value(a);
            if !av.is_finite() || av <= 0.0 {
                return Err(AlgebraError::Overflow);
            }
            v *= av.powi(e);
        }
        if !v.is_finite() || v <= 0.0 {
            return Err(AlgebraError::Overflow);
        }
        Ok(v)
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self.factors.iter().map(|(&a, &e)| json!([atom(a).to_json(), e])).collect();
        let mut v = json!({ "monomial": self.monomial.0, "factors": factors });
        if !self.scalar.is_one() {
            v["scalar"] = json!(self.scalar.to_string());
        }
        v
    }
}

impl fmt::Display for FactoredSF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.scalar.is_one() {
            parts.push(if self.scalar.is_negative() { format!("({})", self.scalar) } else { self.scalar.to_string() });
        }
        if !self.monomial.is_zero() {
            parts.push(self.monomial.to_string());
        }
        for (&a, &e) in &self.factors {
            if e == 1 {
                parts.push(format!("({})", atom(a)));
            } else {
                parts.push(format!("({})^{}", atom(a), e));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for FactoredSF {
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
    fn tropicalize_rational_function() {
        let num = p(3, &[(&[1, 2, 2], 3), (&[2, 1, 1], 2)]);
        let den = p(3, &[(&[0, 2, 0], 3), (&[2, 2, 0], 1), (&[1, 3, 1], 1)]);
        let f = FactoredSF::from_poly(&num).unwrap().div(&FactoredSF::from_poly(&den).unwrap());
        assert_eq!(f.tropicalize(), ExpVector(vec![1, -1, 1]));
    }

    #[test]
    fn tropicalize_f_polynomial_and_monomial() {
        let f = FactoredSF::from_poly(&p(2, &[(&[0, 0], 1), (&[0, 1], 1), (&[1, 1], 1)])).unwrap();
        assert_eq!(f.tropicalize(), ExpVector::zeros(2));
        let m = FactoredSF::from_monomial(ExpVector(vec![2, -1]));
        assert_eq!(m.tropicalize(), ExpVector(vec![2, -1]));
    }

    #[test]
    fn evaluations() {
        let one_plus_y1 = p(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let a = FactoredSF::from_parts(ExpVector(vec![0, 1]), &[(&one_plus_y1, 1)]).unwrap();
        assert_eq!(a.eval_positive(&[1.0, 1.0]).unwrap(), 2.0);
        let f2 = p(2, &[(&[0, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        let b = FactoredSF::from_parts(ExpVector(vec![-1, 0]), &[(&f2, 1)]).unwrap();
        assert_eq!(b.eval_positive(&[1.0, 1.0]).unwrap(), 3.0);
        let one_plus_y2 = p(2, &[(&[0, 0], 1), (&[0, 1], 1)]);
        let c = FactoredSF::from_parts(ExpVector(vec![-1, -2]), &[(&one_plus_y2, 2)]).unwrap();
        assert_eq!(c.eval_positive(&[1.0, 1.0]).unwrap(), 4.0);
    }

    #[test]
    fn overflow_is_reported() {
        let f = FactoredSF::from_monomial(ExpVector(vec![400]));
        assert_eq!(f.eval_positive(&[1e10]), Err(AlgebraError::Overflow));
    }

    #[test]
    fn value_equality_across_splittings() {
        let a = p(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = p(2, &[(&[0, 0], 1), (&[0, 1], 1)]);
        let split = FactoredSF::from_poly(&a).unwrap().mul(&FactoredSF::from_poly(&b).unwrap());
        let joined = FactoredSF::from_poly(&(&a * &b)).unwrap();
        assert_ne!(split, joined);
        assert!(split.value_eq(&joined));
        assert!(!split.value_eq(&FactoredSF::from_poly(&a).unwrap()));
    }

    #[test]
    fn json_shape() {
        let a = p(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let f = FactoredSF::from_parts(ExpVector(vec![0, 1]), &[(&a, -1)]).unwrap();
        assert_eq!(
            f.to_json(),
            json!({"monomial": [0, 1], "factors": [[[[[0, 0], "1", "1"], [[1, 0], "1", "1"]], -1]]})
        );
    }

    fn positive_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0i32..3, 0i32..3), 1i64..4), 1..4).prop_map(|ts| {
            let mut q = MultiPoly::zero(2);
            for ((a, b), k) in ts {
                q.add_term(ExpVector(vec![a, b]), crate::int(k));
            }
            q
        })
    }

    fn factored() -> impl Strategy<Value = FactoredSF> {
        (positive_poly(), positive_poly(), -2i32..3, -2i32..3).prop_map(|(a, b, m1, m2)| {
            let f = FactoredSF::from_poly(&a).unwrap().div(&FactoredSF::from_poly(&b).unwrap());
            f.mul(&FactoredSF::from_monomial(ExpVector(vec![m1, m2])))
        })
    }

    proptest! {
        #[test]
        fn tropicalize_is_multiplicative(f in factored(), g in factored()) {
            prop_assert_eq!(f.mul(&g).tropicalize(), &f.tropicalize() + &g.tropicalize());
        }

        #[test]
        fn eval_is_multiplicative(f in factored(), g in factored(), x in 0.1f64..10.0, y in 0.1f64..10.0) {
            let pt = [x, y];
            let lhs = f.mul(&g).eval_positive(&pt).unwrap();
            let rhs = f.eval_positive(&pt).unwrap() * g.eval_positive(&pt).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
        }

        #[test]
        fn interning_is_canonical(a in positive_poly()) {
            let f = FactoredSF::from_poly(&a).unwrap();
            let g = FactoredSF::from_poly(&a.scale(&crate::int(3))).unwrap();
            prop_assert_eq!(f.factors(), g.factors());
            prop_assert_eq!(
                serde_json::to_string(&f.to_json()["factors"]).unwrap(),
                serde_json::to_string(&g.to_json()["factors"]).unwrap()
            );
        }
    }
}
