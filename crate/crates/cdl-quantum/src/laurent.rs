//! The truncated q-commutative Laurent algebra `A_Ω`.
//!
//! Elements are sums `Σ c_m Y^m` of normalized monomials with
//! `Y^m Y^{m′} = q^{{m,m′}} Y^{m+m′}`. Each element carries a base exponent
//! (every term satisfies `m ≥ base` componentwise) and a precision: terms with
//! `deg(m − base) ≤ prec` are known exactly, the rest are unknown.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use cdl_algebra::{BigInt, BigRational, ExpVector};
use cdl_seed::SkewDecomposition;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::{QCoeff, QuantumError};

/// A skew form `Ω`, the symmetrizer `δ` and the root order `d` of `t = q^{1/d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QContext {
    omega: Vec<Vec<BigRational>>,
    /// `d·Ω`, integral.
    twist: Vec<Vec<i64>>,
    delta: Vec<i64>,
    d: i64,
    trunc: i64,
}

impl QContext {
    /// Fails unless `Ω` is skew-symmetric, `d·Ω` is integral and every `δᵢ` divides `d`.
    pub fn new(omega: Vec<Vec<BigRational>>, delta: Vec<i64>, d: i64, trunc: i64) -> Result<Arc<Self>, QuantumError> {
        let n = delta.len();
        if d < 1 || trunc < 0 || omega.len() != n || omega.iter().any(|r| r.len() != n) {
            return Err(QuantumError::BadContext(format!("rank {n}, d = {d}, degree {trunc}")));
        }
        if let Some(k) = delta.iter().find(|&&k| k < 1 || d % k != 0) {
            return Err(QuantumError::BadContext(format!("δ = {k} does not divide d = {d}")));
        }
        let dd = BigRational::from_integer(BigInt::from(d));
        let mut twist = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if omega[i][j] != -omega[j][i].clone() {
                    return Err(QuantumError::BadContext("Ω is not skew-symmetric".into()));
                }
                let v = &omega[i][j] * &dd;
                if !v.is_integer() {
                    return Err(QuantumError::BadQuantumData { what: format!("Ω entry {}", omega[i][j]), d });
                }
                twist[i][j] = i64::try_from(v.to_integer()).map_err(|_| QuantumError::BadContext("entry too large".into()))?;
            }
        }
        Ok(Arc::new(QContext { omega, twist, delta, d, trunc }))
    }

    /// Root order `d = lcm δᵢ`.
    pub fn from_decomposition(dec: &SkewDecomposition, trunc: i64) -> Result<Arc<Self>, QuantumError> {
        let d = dec.delta.iter().fold(1i64, |l, &x| l.lcm(&x));
        Self::new(dec.omega.clone(), dec.delta.clone(), d, trunc)
    }

    /// A commuting context of the given rank, used for `q = 1` specializations.
    pub fn commutative(rank: usize, trunc: i64) -> Arc<Self> {
        Self::new(vec![vec![BigRational::zero(); rank]; rank], vec![1; rank], 1, trunc).expect("valid context")
    }

    /// The same algebra at another degree budget.
    pub fn with_trunc(&self, trunc: i64) -> Arc<Self> {
        Arc::new(QContext { trunc, ..self.clone() })
    }

    pub fn rank(&self) -> usize {
        self.delta.len()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    pub fn omega(&self) -> &[Vec<BigRational>] {
        &self.omega
    }

    pub fn decomposition(&self) -> SkewDecomposition {
        SkewDecomposition { delta: self.delta.clone(), omega: self.omega.clone() }
    }

    /// `{n, m}_Ω`.
    pub fn pairing(&self, n: &[i32], m: &[i32]) -> BigRational {
        BigRational::new(BigInt::from(self.twist_exp(n, m)), BigInt::from(self.d))
    }

    /// `d·{n, m}`, the power of `t` in `Y^n Y^m = t^{…} Y^{n+m}`.
    pub fn twist_exp(&self, n: &[i32], m: &[i32]) -> i64 {
        let mut s = 0i64;
        for (i, &a) in n.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in m.iter().enumerate() {
                s += self.twist[i][j] * a as i64 * b as i64;
            }
        }
        s
    }

    /// The power of `t` representing `q^x`.
    pub fn t_exponent(&self, x: &BigRational) -> Result<i64, QuantumError> {
        let v = x * BigRational::from_integer(BigInt::from(self.d));
        if !v.is_integer() {
            return Err(QuantumError::BadQuantumData { what: x.to_string(), d: self.d });
        }
        i64::try_from(v.to_integer()).map_err(|_| QuantumError::BadQuantumData { what: x.to_string(), d: self.d })
    }

    /// `q^x` as a coefficient.
    pub fn q_pow(&self, x: &BigRational) -> Result<QCoeff, QuantumError> {
        Ok(QCoeff::t_pow(self.t_exponent(x)?))
    }

    /// The power of `t` representing `q_k = q^{1/δ_k}`.
    pub fn qk_exponent(&self, k: usize) -> i64 {
        self.d / self.delta[k]
    }
}

/// An element of the completed algebra, known to a relative degree.
#[derive(Clone)]
pub struct QLaurentElement {
    ctx: Arc<QContext>,
    base: ExpVector,
    prec: i64,
    terms: BTreeMap<ExpVector, QCoeff>,
}

pub(crate) fn rel_degree(m: &ExpVector, base: &ExpVector) -> i64 {
    m.0.iter().zip(&base.0).map(|(&a, &b)| (a - b) as i64).sum()
}

impl QLaurentElement {
    pub fn zero(ctx: &Arc<QContext>) -> Self {
        QLaurentElement { ctx: ctx.clone(), base: ExpVector::zeros(ctx.rank()), prec: ctx.trunc, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<QContext>, c: QCoeff) -> Self {
        Self::monomial(ctx, ExpVector::zeros(ctx.rank()), c)
    }

    pub fn one(ctx: &Arc<QContext>) -> Self {
        Self::constant(ctx, QCoeff::one())
    }

    /// `c·Y^m` for a normalized monomial.
    pub fn monomial(ctx: &Arc<QContext>, m: ExpVector, c: QCoeff) -> Self {
        assert_eq!(m.dim(), ctx.rank(), "exponent of the wrong rank");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m.clone(), c);
        }
        QLaurentElement { ctx: ctx.clone(), base: m, prec: ctx.trunc, terms }
    }

    /// The generator `Yᵢ`.
    pub fn generator(ctx: &Arc<QContext>, i: usize) -> Self {
        Self::monomial(ctx, ExpVector::unit(ctx.rank(), i), QCoeff::one())
    }

    /// Assembles an element from absolute-exponent terms; zero terms are dropped.
    pub(crate) fn from_parts(ctx: &Arc<QContext>, base: ExpVector, prec: i64, mut terms: BTreeMap<ExpVector, QCoeff>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        QLaurentElement { ctx: ctx.clone(), base, prec, terms }
    }

    pub fn context(&self) -> &Arc<QContext> {
        &self.ctx
    }

    /// The shift `Y^{base}` factored out of every term.
    pub fn shift(&self) -> &ExpVector {
        &self.base
    }

    /// Known relative degree.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Terms with absolute exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVector, &QCoeff)> {
        self.terms.iter()
    }

    /// Terms `c_n` of the series part, with `n = m − shift ≥ 0`.
    pub fn series(&self) -> impl Iterator<Item = (ExpVector, &QCoeff)> {
        self.terms.iter().map(|(m, c)| (m - &self.base, c))
    }

    pub fn coeff(&self, m: &ExpVector) -> QCoeff {
        self.terms.get(m).cloned().unwrap_or_else(QCoeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether `m` lies in the region where coefficients are known.
    pub fn is_known(&self, m: &ExpVector) -> bool {
        m.0.iter().zip(&self.base.0).all(|(a, b)| a >= b) && rel_degree(m, &self.base) <= self.prec
    }

    fn check_ctx(&self, other: &Self) -> Result<(), QuantumError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(QuantumError::MixedContext)
        }
    }

    /// Keeps only terms of relative degree at most `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        let terms = self.terms.iter().filter(|(m, _)| rel_degree(m, &self.base) <= prec).map(|(m, c)| (m.clone(), c.clone())).collect();
        QLaurentElement { ctx: self.ctx.clone(), base: self.base.clone(), prec, terms }
    }

    /// Re-expresses the element over a lower base.
    fn rebased(&self, base: &ExpVector) -> (i64, &BTreeMap<ExpVector, QCoeff>) {
        (self.prec + rel_degree(&self.base, base), &self.terms)
    }

    pub fn add(&self, other: &Self) -> Result<Self, QuantumError> {
        self.check_ctx(other)?;
        let base = self.base.cwise_min(&other.base);
        let (pa, ta) = self.rebased(&base);
        let (pb, tb) = other.rebased(&base);
        let prec = pa.min(pb);
        let mut terms: BTreeMap<ExpVector, QCoeff> = BTreeMap::new();
        for (m, c) in ta.iter().chain(tb.iter()) {
            if rel_degree(m, &base) > prec {
                continue;
            }
            let e = terms.entry(m.clone()).or_insert_with(QCoeff::zero);
            *e = e.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(QLaurentElement { ctx: self.ctx.clone(), base, prec, terms }.tighten_base())
    }

    /// Raises the base to the componentwise minimum of the surviving terms,
    /// keeping the known region unchanged, so `0 + x` is a unit when `x` is.
    fn tighten_base(mut self) -> Self {
        if self.terms.is_empty() || self.terms.contains_key(&self.base) {
            return self;
        }
        let mut keys = self.terms.keys();
        let first = keys.next().expect("nonempty").clone();
        let low = keys.fold(first, |acc, m| acc.cwise_min(m));
        self.prec -= rel_degree(&low, &self.base);
        self.base = low;
        self
    }

    pub fn neg(&self) -> Self {
        self.scale(&QCoeff::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QuantumError> {
        self.add(&other.neg())
    }

    /// Multiplies by a central scalar.
    pub fn scale(&self, c: &QCoeff) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
        } else {
            for v in out.terms.values_mut() {
                *v = v.mul(c);
            }
        }
        out
    }

    /// The q-twisted product.
    pub fn mul(&self, other: &Self) -> Result<Self, QuantumError> {
        self.check_ctx(other)?;
        let base = &self.base + &other.base;
        let prec = self.prec.min(other.prec);
        let mut terms: BTreeMap<ExpVector, QCoeff> = BTreeMap::new();
        let right: Vec<(&ExpVector, &QCoeff, i64)> =
            other.terms.iter().map(|(m, c)| (m, c, rel_degree(m, &other.base))).filter(|t| t.2 <= prec).collect();
        for (m, c) in &self.terms {
            let dm = rel_degree(m, &self.base);
            if dm > prec {
                continue;
            }
            for &(m2, c2, d2) in &right {
                if dm + d2 > prec {
                    continue;
                }
                let v = c.mul(c2).mul_t(self.ctx.twist_exp(&m.0, &m2.0));
                let e = terms.entry(m + m2).or_insert_with(QCoeff::zero);
                *e = e.add(&v);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(QLaurentElement { ctx: self.ctx.clone(), base, prec, terms })
    }

    /// Inverse of an element `c·Y^b(1 + R)` with `c ≠ 0` at the base:
    /// the geometric series in `R` times `c⁻¹Y^{−b}`.
    pub fn inv_unit(&self) -> Result<Self, QuantumError> {
        let c0 = self.terms.get(&self.base).ok_or(QuantumError::NonUnit)?;
        let mono_inv = Self::monomial(&self.ctx, -&self.base, c0.inv());
        let u = mono_inv.mul(self)?;
        let one = Self::one(&self.ctx);
        let r = u.sub(&one)?;
        let mut inv = one.clone();
        for _ in 0..=u.prec {
            inv = one.sub(&r.mul(&inv)?)?;
        }
        inv.mul(&mono_inv)
    }

    /// Integer power; negative powers need a unit.
    pub fn pow(&self, k: i64) -> Result<Self, QuantumError> {
        let b = if k < 0 { self.inv_unit()? } else { self.clone() };
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&b)?;
        }
        Ok(acc)
    }

    /// The lowest known exponent (in graded order) where `self − other` is
    /// nonzero, with the residual coefficient. `None` when the two agree on
    /// their common known region.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(ExpVector, QCoeff)>, QuantumError> {
        let diff = self.sub(other)?;
        if diff.prec < 0 {
            return Err(QuantumError::TruncationLoss);
        }
        Ok(diff.terms.iter().map(|(m, c)| (m.clone(), c.clone())).min_by_key(|(m, _)| (rel_degree(m, &diff.base), m.clone())))
    }

    /// Equality on the common known region.
    pub fn agrees_with(&self, other: &Self) -> Result<bool, QuantumError> {
        Ok(self.first_difference(other)?.is_none())
    }

    /// Whether the element is `1` on its known region.
    pub fn is_one(&self) -> bool {
        self.agrees_with(&Self::one(&self.ctx)).unwrap_or(false)
    }

    /// Substitutes `q = 1` into every coefficient, landing in a commuting context.
    pub fn specialize_at_one(&self, target: &Arc<QContext>) -> Result<Self, QuantumError> {
        if target.rank() != self.ctx.rank() {
            return Err(QuantumError::MixedContext);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.eval_at_one().ok_or_else(|| QuantumError::LimitMismatch(format!("pole at q = 1 in the coefficient of Y^{m}: {c}")))?;
            if !v.is_zero() {
                terms.insert(m.clone(), QCoeff::from_rational(v));
            }
        }
        Ok(QLaurentElement { ctx: target.clone(), base: self.base.clone(), prec: self.prec, terms })
    }

    pub fn to_json(&self) -> Value {
        let d = self.ctx.d;
        json!({
            "shift": self.base.0,
            "precision": self.prec,
            "terms": self.series().map(|(n, c)| json!([n.0, c.to_json(d)])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QLaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "Y^{m}")?;
            } else {
                write!(f, "({c})Y^{m}")?;
            }
        }
        write!(f, " + O(deg {} over Y^{})", self.prec + 1, self.base)
    }
}

impl fmt::Debug for QLaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The ordered product `Y_{i₁}^{a₁}⋯Y_{i_r}^{a_r}` of generator powers.
pub fn ordered_monomial(ctx: &Arc<QContext>, factors: &[(usize, i32)]) -> Result<QLaurentElement, QuantumError> {
    let mut acc = QLaurentElement::one(ctx);
    for &(i, a) in factors {
        acc = acc.mul(&QLaurentElement::generator(ctx, i).pow(a as i64)?)?;
    }
    Ok(acc)
}

/// The scalar `Σ cᵢ q^{eᵢ}` for rational exponents `eᵢ`.
pub fn q_poly(ctx: &QContext, terms: &[(i64, BigRational)]) -> Result<QCoeff, QuantumError> {
    let mut out = QCoeff::zero();
    for (c, e) in terms {
        out = out.add(&ctx.q_pow(e)?.scale(&BigRational::from_integer(BigInt::from(*c))));
    }
    Ok(out)
}
