//! Symbolic constancy: the second exterior power of the multiplicative group,
//! generated by the initial variables, interned atoms and rational primes.

use std::collections::BTreeMap;
use std::fmt;

use cdl_algebra::{atom, AtomId, BigRational, FactoredSF};
use cdl_pattern::PatternRun;
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::DilogError;

/// A free generator of the multiplicative group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Var(usize),
    Atom(AtomId),
    /// A prime factor of a rational scalar; large cofactors that resist trial division stay whole.
    Prime(BigUint),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Var(i) => write!(f, "y{}", i + 1),
            Generator::Atom(a) => write!(f, "({})", atom(*a)),
            Generator::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn prime_factors(mut n: BigUint, sign: i64, out: &mut Vec<(Generator, i64)>) {
    let mut p = 2u64;
    while p < 10_000 && !n.is_one() {
        let bp = BigUint::from(p);
        while (&n % &bp).is_zero() {
            n /= &bp;
            out.push((Generator::Prime(bp.clone()), sign));
        }
        p += 1;
    }
    if !n.is_one() {
        out.push((Generator::Prime(n), sign));
    }
}

/// Exponents of a factored value over the free generators.
fn decompose(v: &FactoredSF) -> Vec<(Generator, i64)> {
    let mut out: Vec<(Generator, i64)> = v
        .monomial()
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| (Generator::Var(i), e as i64))
        .collect();
    out.extend(v.factors().iter().map(|(&a, &e)| (Generator::Atom(a), e as i64)));
    let s = v.scalar();
    debug_assert!(s.is_positive());
    prime_factors(s.numer().abs().to_biguint().unwrap(), 1, &mut out);
    prime_factors(s.denom().to_biguint().unwrap(), -1, &mut out);
    out
}

/// An element of the second exterior power, stored on ordered generator pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WedgeElement {
    coeffs: BTreeMap<(Generator, Generator), BigRational>,
}

impl WedgeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of surviving pairs.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<(Generator, Generator), BigRational> {
        &self.coeffs
    }

    /// Adds `c · (g ∧ h)`.
    pub fn add_pair(&mut self, g: &Generator, h: &Generator, c: &BigRational) {
        if g == h || c.is_zero() {
            return;
        }
        let (key, c) = if g < h { ((g.clone(), h.clone()), c.clone()) } else { ((h.clone(), g.clone()), -c) };
        let entry = self.coeffs.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Adds `c · (a ∧ b)` expanded bilinearly.
    pub fn add_wedge(&mut self, a: &FactoredSF, b: &FactoredSF, c: &BigRational) {
        let (da, db) = (decompose(a), decompose(b));
        for (g, e) in &da {
            for (h, f) in &db {
                self.add_pair(g, h, &(c * BigRational::from_integer((e * f).into())));
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((g, h), c) in &other.coeffs {
            out.add_pair(g, h, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((g, h), c) in &other.coeffs {
            out.add_pair(g, h, &-c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self.coeffs.iter().map(|((g, h), c)| json!([g.to_string(), h.to_string(), c.to_string()])).collect();
        json!(pairs)
    }
}

/// `a ∧ b`.
pub fn wedge_of(a: &FactoredSF, b: &FactoredSF) -> WedgeElement {
    let mut w = WedgeElement::zero();
    w.add_wedge(a, b, &BigRational::one());
    w
}

fn step_term(run: &PatternRun, s: usize) -> WedgeElement {
    let k = run.direction(s);
    let mut w = WedgeElement::zero();
    w.add_wedge(&run.separation_y(s, k), &run.one_plus_y(s), &BigRational::from_integer(run.word.delta(k).into()));
    w
}

/// `Σ_s δ_{k_s} y_{k_s}(s) ∧ (1 + y_{k_s}(s))`; zero on every period.
pub fn wedge_check(run: &PatternRun) -> Result<WedgeElement, DilogError> {
    if !run.has_f() {
        return Err(DilogError::MissingF);
    }
    let total = (0..run.len()).fold(WedgeElement::zero(), |acc, s| acc.add(&step_term(run, s)));
    if total.is_zero() {
        Ok(total)
    } else {
        Err(DilogError::NonZeroWedge(total.len()))
    }
}

/// `V(s) = Σ_i δ_i F_i ∧ y^{c_i} + ½ Σ_{i,j} δ_i b_ji F_i ∧ F_j`.
pub fn vt_element(run: &PatternRun, s: usize) -> WedgeElement {
    let st = run.step(s);
    let n = run.rank();
    let f: Vec<FactoredSF> = st.f.iter().map(|p| FactoredSF::from_poly(p).expect("nonzero F")).collect();
    let mut w = WedgeElement::zero();
    for i in 0..n {
        let d = BigRational::from_integer(run.word.delta(i).into());
        w.add_wedge(&f[i], &FactoredSF::from_monomial(st.c_vector(i)), &d);
        for j in 0..n {
            let b = st.b.get(j, i);
            if b != 0 {
                let c = &d * BigRational::new(b.into(), 2.into());
                w.add_wedge(&f[i], &f[j], &c);
            }
        }
    }
    w
}

/// Result of [`vt_check`].
#[derive(Clone, Debug)]
pub struct VtReport {
    pub steps_checked: usize,
    /// `Some(V(P) == V(0))` when the run is periodic.
    pub closes: Option<bool>,
}

/// Checks `V(s+1) − V(s) = δ_{k_s} y_{k_s}(s) ∧ (1 + y_{k_s}(s))` at every step,
/// and `V(P) = V(0)` on periodic runs.
pub fn vt_check(run: &PatternRun) -> Result<VtReport, DilogError> {
    if !run.has_f() {
        return Err(DilogError::MissingF);
    }
    let mut prev = vt_element(run, 0);
    let first = prev.clone();
    for s in 0..run.len() {
        let next = vt_element(run, s + 1);
        if next.sub(&prev) != step_term(run, s) {
            return Err(DilogError::StepMismatch(s));
        }
        prev = next;
    }
    let closes = run.detect_period().map(|_| prev == first);
    if closes == Some(false) {
        return Err(DilogError::StepMismatch(run.len()));
    }
    Ok(VtReport { steps_checked: run.len(), closes })
}

