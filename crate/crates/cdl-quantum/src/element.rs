//! Quantum dilogarithm elements `Ψ_{a,b}[n]` and their y-representation.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use cdl_algebra::{int, BigRational, ExpVector};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::laurent::rel_degree;
use crate::series::q_number;
use crate::{QCoeff, QContext, QLaurentElement, QuantumError};

/// `Ψ_{a,b}[n] = exp(Σ_j (−1)^{j+1} q^{jb}/(j[ja]_q) X_{jn})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDilogFactor {
    pub n: ExpVector,
    /// Interval `a > 0`.
    pub a: BigRational,
    /// Shift `b`.
    pub b: BigRational,
}

impl QDilogFactor {
    pub fn new(n: ExpVector, a: BigRational, b: BigRational) -> Self {
        QDilogFactor { n, a, b }
    }

    /// `Ψ_a[n] = Ψ_{a,0}[n]`.
    pub fn plain(n: ExpVector, a: BigRational) -> Self {
        Self::new(n, a, BigRational::zero())
    }

    /// The exponent `1/a` of the classical limit `Ψ[n]^{1/a}`.
    pub fn classical_exponent(&self) -> BigRational {
        self.a.recip()
    }

    /// `(a, b)` as powers of `t`, after checking the data against the context.
    fn data(&self, ctx: &QContext) -> Result<(i64, i64), QuantumError> {
        if self.n.dim() != ctx.rank() || !self.n.is_nonnegative() || self.n.is_zero() {
            return Err(QuantumError::BadVector(self.n.clone()));
        }
        if !self.a.is_positive() {
            return Err(QuantumError::BadQuantumData { what: format!("a = {}", self.a), d: ctx.d() });
        }
        Ok((ctx.t_exponent(&self.a)?, ctx.t_exponent(&self.b)?))
    }

    /// The coefficient `(−1)^{j+1} q^{jb}/(j[ja]_q)` of `X_{jn}`.
    pub fn log_coefficient(&self, j: u32, ctx: &QContext) -> Result<QCoeff, QuantumError> {
        let (a, b) = self.data(ctx)?;
        let j = j as i64;
        let sign = if j % 2 == 1 { 1 } else { -1 };
        Ok(QCoeff::t_pow(j * b).scale(&int(sign)).div(&q_number(j * a, ctx.d()).scale(&int(j))))
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n.0, "a": self.a.to_string(), "b": self.b.to_string() })
    }
}

/// Coefficients `e_j` (`j ≤ jmax`) of `E(z)` with
/// `Ψ_{a,b}[n]^p (Y^{n′}) = Y^{n′} E(Y^n)`, where
/// `log E = p·Σ_j (q^{2jα}−1)/(q^{2ja}−1) · (−1)^{j+1}/j · q^{ja+jb} z^j`
/// and all of `α = {n, n′}`, `a`, `b` are given as powers of `t`.
fn action_series(alpha: i64, a: i64, b: i64, power: i64, jmax: usize) -> Vec<QCoeff> {
    let one = QCoeff::one();
    let r: Vec<QCoeff> = (0..=jmax as i64)
        .map(|j| {
            if j == 0 || alpha == 0 {
                return QCoeff::zero();
            }
            let ratio = QCoeff::t_pow(2 * j * alpha).sub(&one).mul(&QCoeff::recip_t_pow_minus_one(2 * j * a));
            let sign = if j % 2 == 1 { power } else { -power };
            ratio.mul_t(j * (a + b)).scale(&BigRational::new(sign.into(), j.into()))
        })
        .collect();
    // E = exp(L): m·e_m = Σ_{j=1}^{m} j·r_j·e_{m−j}.
    let mut e = vec![QCoeff::one()];
    for m in 1..=jmax {
        let mut acc = QCoeff::zero();
        for j in 1..=m {
            if !r[j].is_zero() {
                acc = acc.add(&r[j].mul(&e[m - j]).scale(&int(j as i64)));
            }
        }
        e.push(acc.scale(&BigRational::new(1.into(), (m as i64).into())));
    }
    e
}

/// The action of `Ψ_{a,b}[n]^{power}` on an element, monomial by monomial.
pub fn qpsi_action(f: &QDilogFactor, power: i64, target: &QLaurentElement) -> Result<QLaurentElement, QuantumError> {
    let ctx = target.context();
    let (a, b) = f.data(ctx)?;
    let dn = f.n.degree();
    let base = target.shift().clone();
    let prec = target.precision();
    let jmax_all = (prec.max(0) / dn) as usize;
    let mut cache: HashMap<i64, Vec<QCoeff>> = HashMap::new();
    let mut terms: BTreeMap<ExpVector, QCoeff> = BTreeMap::new();
    for (m, c) in target.terms() {
        let dm = rel_degree(m, &base);
        if dm > prec {
            continue;
        }
        let alpha = ctx.twist_exp(&f.n.0, &m.0);
        let e = cache.entry(alpha).or_insert_with(|| action_series(alpha, a, b, power, jmax_all));
        let jmax = ((prec - dm) / dn) as usize;
        for (j, ej) in e.iter().enumerate().take(jmax + 1) {
            if ej.is_zero() {
                continue;
            }
            let jn = f.n.scale(j as i32);
            let v = c.mul(ej).mul_t(ctx.twist_exp(&m.0, &jn.0));
            let slot = terms.entry(m + &jn).or_insert_with(QCoeff::zero);
            *slot = slot.add(&v);
        }
    }
    Ok(QLaurentElement::from_parts(ctx, base, prec, terms))
}

/// An automorphism of the truncated algebra, stored as the images of the
/// generators. Products compose as `(gh)(Y) = g(h(Y))`.
#[derive(Clone, Debug)]
pub struct QGroupElement {
    ctx: Arc<QContext>,
    images: Vec<QLaurentElement>,
}

impl QGroupElement {
    /// Needs a nonsingular `Ω`, so that equality of actions is equality in the group.
    pub fn identity(ctx: &Arc<QContext>) -> Result<Self, QuantumError> {
        if ctx.decomposition().is_singular() {
            return Err(QuantumError::SingularOmega);
        }
        let images = (0..ctx.rank()).map(|i| QLaurentElement::generator(ctx, i)).collect();
        Ok(QGroupElement { ctx: ctx.clone(), images })
    }

    pub fn context(&self) -> &Arc<QContext> {
        &self.ctx
    }

    /// The image of `Yᵢ`.
    pub fn image(&self, i: usize) -> &QLaurentElement {
        &self.images[i]
    }

    /// `Ψ_{a,b}[n]^{power} · self`.
    pub fn left_mul(&self, f: &QDilogFactor, power: i64) -> Result<Self, QuantumError> {
        let images = self.images.iter().map(|y| qpsi_action(f, power, y)).collect::<Result<_, _>>()?;
        Ok(QGroupElement { ctx: self.ctx.clone(), images })
    }

    /// The first generator image where the two actions differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(usize, ExpVector, QCoeff)>, QuantumError> {
        for (i, (x, y)) in self.images.iter().zip(&other.images).enumerate() {
            if let Some((m, c)) = x.first_difference(y)? {
                return Ok(Some((i, m, c)));
            }
        }
        Ok(None)
    }

    pub fn agrees_with(&self, other: &Self) -> Result<bool, QuantumError> {
        Ok(self.first_difference(other)?.is_none())
    }

    pub fn is_identity(&self) -> Result<bool, QuantumError> {
        self.agrees_with(&Self::identity(&self.ctx)?)
    }

    /// Generator images with `q = 1` substituted.
    pub fn specialize_at_one(&self) -> Result<Vec<QLaurentElement>, QuantumError> {
        let target = QContext::commutative(self.ctx.rank(), self.ctx.trunc());
        self.images.iter().map(|y| y.specialize_at_one(&target)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({ "images": self.images.iter().map(QLaurentElement::to_json).collect::<Vec<_>>() })
    }
}

/// The product of the factors read left to right.
pub fn q_ordered_product(ctx: &Arc<QContext>, factors: &[QDilogFactor]) -> Result<QGroupElement, QuantumError> {
    let mut g = QGroupElement::identity(ctx)?;
    for f in factors.iter().rev() {
        g = g.left_mul(f, 1)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cdl_algebra::rat;

    fn ctx(d: i64) -> Arc<QContext> {
        QContext::new(vec![vec![int(0), int(-1)], vec![int(1), int(0)]], vec![1, 1], d, 6).unwrap()
    }

    /// `Π_{u=1}^{|k|}(1 + q^{±a(2u−1)+b} z)^{±1}` for `α = k·a`, expanded by hand.
    fn closed_form(k: i64, a: i64, b: i64, jmax: usize) -> Vec<QCoeff> {
        let mut out = vec![QCoeff::zero(); jmax + 1];
        out[0] = QCoeff::one();
        for u in 1..=k.abs() {
            let shift = if k > 0 { a * (2 * u - 1) + b } else { -a * (2 * u - 1) + b };
            let x = QCoeff::t_pow(shift);
            if k > 0 {
                for j in (1..=jmax).rev() {
                    out[j] = out[j].add(&out[j - 1].mul(&x));
                }
            } else {
                // Divide by (1 + x z).
                for j in 1..=jmax {
                    out[j] = out[j].sub(&out[j - 1].mul(&x));
                }
            }
        }
        out
    }

    #[test]
    fn integral_ratios_give_finite_products() {
        for (k, a, b) in [(1, 1, 0), (2, 1, 0), (-1, 1, 0), (-3, 2, 1), (3, 1, -2), (0, 1, 0)] {
            assert_eq!(action_series(k * a, a, b, 1, 6), closed_form(k, a, b, 6), "k={k} a={a} b={b}");
        }
    }

    #[test]
    fn single_factor_actions() {
        let c = ctx(1);
        let y1 = QLaurentElement::generator(&c, 0);
        let f = QDilogFactor::plain(ExpVector(vec![0, 1]), int(1));
        // {e₂, e₁} = 1: Y₁ ↦ Y₁(1 + qY₂).
        let img = qpsi_action(&f, 1, &y1).unwrap();
        let expect = y1.mul(&QLaurentElement::one(&c).add(&QLaurentElement::generator(&c, 1).scale(&QCoeff::t_pow(1))).unwrap()).unwrap();
        assert!(img.agrees_with(&expect).unwrap());
        // Ψ fixes its own monomial and Ψ·Ψ⁻¹ acts trivially.
        assert!(qpsi_action(&f, 1, &QLaurentElement::generator(&c, 1)).unwrap().agrees_with(&QLaurentElement::generator(&c, 1)).unwrap());
        let g = QGroupElement::identity(&c).unwrap().left_mul(&f, 1).unwrap().left_mul(&f, -1).unwrap();
        assert!(g.is_identity().unwrap());
    }

    #[test]
    fn data_must_live_in_the_root_lattice() {
        let c = ctx(1);
        let f = QDilogFactor::new(ExpVector(vec![1, 1]), rat(1, 2), int(0));
        assert!(matches!(qpsi_action(&f, 1, &QLaurentElement::one(&c)), Err(QuantumError::BadQuantumData { .. })));
        let g = QDilogFactor::plain(ExpVector(vec![0, 0]), int(1));
        assert!(matches!(qpsi_action(&g, 1, &QLaurentElement::one(&c)), Err(QuantumError::BadVector(_))));
        assert_eq!(QDilogFactor::plain(ExpVector(vec![1, 0]), rat(1, 3)).classical_exponent(), int(3));
    }
}
