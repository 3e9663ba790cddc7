//! Dilogarithm factors and the rank-2 ordered factorization.

use std::cmp::Ordering;
use std::sync::Arc;

use cdl_algebra::{BigRational, ExpVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::group::{GroupContext, GroupElement};
use crate::ScatterError;

/// The factor `Ψ[n]^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilogFactor {
    pub n: ExpVector,
    pub exponent: BigRational,
}

impl DilogFactor {
    pub fn new(n: ExpVector, exponent: BigRational) -> Self {
        DilogFactor { n, exponent }
    }

    /// The multiplicity `s` in `exponent = s·δ(n)`.
    pub fn multiplicity(&self, delta: &[i64]) -> BigRational {
        &self.exponent / normalization_factor(&self.n, delta)
    }

    pub fn to_json(&self) -> Value {
        json!([self.n.0, rational_json(&self.exponent)])
    }
}

pub(crate) fn rational_json(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Ok(v) = i64::try_from(x.to_integer()) {
            return json!(v);
        }
    }
    json!(x.to_string())
}

/// The smallest positive rational `δ(n)` with `δ(n)·n` in the sublattice
/// spanned by `δᵢ eᵢ`.
pub fn normalization_factor(n: &ExpVector, delta: &[i64]) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::zero();
    for (&ni, &di) in n.0.iter().zip(delta) {
        if ni == 0 {
            continue;
        }
        // δ must be a multiple of δᵢ/nᵢ.
        let q = BigRational::new(BigInt::from(di), BigInt::from(ni)).abs();
        num = if num.is_zero() { q.numer().clone() } else { num.lcm(q.numer()) };
        den = if den.is_zero() { q.denom().clone() } else { den.gcd(q.denom()) };
    }
    assert!(!num.is_zero(), "normalization factor of the zero vector");
    BigRational::new(num, den)
}

/// Order of rays in a product, read left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlopeOrder {
    /// Decreasing `n₁/n₂`: `e₁` leftmost, `e₂` rightmost.
    Decreasing,
    /// Increasing `n₁/n₂`.
    Increasing,
}

impl SlopeOrder {
    pub(crate) fn cmp(self, a: &ExpVector, b: &ExpVector) -> Ordering {
        // a₁/a₂ > b₁/b₂  ⇔  a₁b₂ > b₁a₂ for nonnegative vectors.
        let lhs = a.0[0] as i64 * b.0[1] as i64;
        let rhs = b.0[0] as i64 * a.0[1] as i64;
        match self {
            SlopeOrder::Decreasing => rhs.cmp(&lhs),
            SlopeOrder::Increasing => lhs.cmp(&rhs),
        }
    }
}

/// All factors sitting on one ray, listed by increasing multiple of the
/// primitive normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayFactors {
    pub normal: ExpVector,
    pub factors: Vec<DilogFactor>,
}

/// The product of the rays' factors from left to right.
pub fn ordered_product(ctx: &Arc<GroupContext>, rays: &[RayFactors]) -> GroupElement {
    let mut g = GroupElement::identity(ctx);
    for f in rays.iter().rev().flat_map(|r| r.factors.iter().rev()) {
        g = g.left_mul_psi(&f.n, &f.exponent);
    }
    g
}

/// Writes a rank-2 element as an ordered product of dilogarithm factors,
/// peeling off the lowest-degree discrepancy one degree at a time.
pub fn group_log_factorize(g: &GroupElement, order: SlopeOrder) -> Result<Vec<RayFactors>, ScatterError> {
    let ctx = g.context();
    if ctx.active() != 2 {
        return Err(ScatterError::NotRank2);
    }
    let mut rays: Vec<RayFactors> = Vec::new();
    // Each pass clears at least one degree, so `ℓ + 1` passes suffice.
    for _ in 0..=ctx.trunc() + 1 {
        let mut h = g.clone();
        for f in rays.iter().flat_map(|r| r.factors.iter()) {
            h = h.left_mul_psi(&f.n, &-f.exponent.clone());
        }
        let Some((_, x)) = h.lowest_discrepancy()? else { return Ok(rays) };
        for (m, a) in x.coeffs {
            let (p, _) = m.primitive();
            let slot = match rays.binary_search_by(|r| order.cmp(&r.normal, &p)) {
                Ok(i) => i,
                Err(i) => {
                    rays.insert(i, RayFactors { normal: p, factors: Vec::new() });
                    i
                }
            };
            rays[slot].factors.push(DilogFactor::new(m, a));
        }
    }
    Err(ScatterError::NonFactorizable { degree: ctx.trunc() })
}

/// Whether `x` is a positive integer.
pub(crate) fn is_positive_integer(x: &BigRational) -> bool {
    x.is_integer() && x > &BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cdl_algebra::{int, rat};

    fn ev(v: &[i32]) -> ExpVector {
        ExpVector(v.to_vec())
    }

    #[test]
    fn normalization_factors() {
        assert_eq!(normalization_factor(&ev(&[1, 0]), &[2, 3]), int(2));
        assert_eq!(normalization_factor(&ev(&[0, 1]), &[2, 3]), int(3));
        assert_eq!(normalization_factor(&ev(&[1, 1]), &[2, 2]), int(2));
        assert_eq!(normalization_factor(&ev(&[2, 2]), &[2, 2]), int(1));
        assert_eq!(normalization_factor(&ev(&[4, 4]), &[2, 2]), rat(1, 2));
        assert_eq!(normalization_factor(&ev(&[5, 11]), &[1, 5]), int(5));
        assert_eq!(normalization_factor(&ev(&[6, 10]), &[1, 5]), rat(1, 2));
        // δ(h·n) = δ(n)/h.
        for h in 1..6 {
            assert_eq!(normalization_factor(&ev(&[2 * h, 3 * h]), &[1, 3]), normalization_factor(&ev(&[2, 3]), &[1, 3]) / int(h as i64));
        }
    }

    #[test]
    fn slope_orders() {
        let o = SlopeOrder::Decreasing;
        assert_eq!(o.cmp(&ev(&[1, 0]), &ev(&[1, 1])), Ordering::Less);
        assert_eq!(o.cmp(&ev(&[1, 2]), &ev(&[0, 1])), Ordering::Less);
        assert_eq!(o.cmp(&ev(&[2, 2]), &ev(&[1, 1])), Ordering::Equal);
        assert_eq!(SlopeOrder::Increasing.cmp(&ev(&[1, 0]), &ev(&[0, 1])), Ordering::Greater);
    }
}
