//! The degree-truncated structure group, realized through its action on
//! power series in the `y`-variables.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use cdl_algebra::{BigRational, ExpVector};
use cdl_seed::SkewDecomposition;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::series::{rat_i, Series};
use crate::ScatterError;

/// The ambient data shared by group elements: the skew form, the number of
/// active variables (those that carry degree) and the truncation degree.
///
/// When the form is a principal extension, the trailing variables are passive:
/// dilogarithm elements never involve them, but their images are kept so that
/// the action stays faithful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupContext {
    omega: Vec<Vec<BigRational>>,
    active: usize,
    trunc: i64,
}

impl GroupContext {
    pub fn new(omega: Vec<Vec<BigRational>>, active: usize, trunc: i64) -> Result<Arc<Self>, ScatterError> {
        let n = omega.len();
        if omega.iter().any(|r| r.len() != n) || active > n || trunc < 1 {
            return Err(ScatterError::MixedContext);
        }
        if is_singular(&omega) {
            return Err(ScatterError::SingularOmega);
        }
        Ok(Arc::new(GroupContext { omega, active, trunc }))
    }

    /// Context for a decomposition `B = ΔΩ`, principal-extending `Ω` if singular.
    pub fn from_decomposition(dec: &SkewDecomposition, trunc: i64) -> Result<Arc<Self>, ScatterError> {
        let n = dec.rank();
        let omega = if is_singular(&dec.omega) { dec.principal_extension().omega } else { dec.omega.clone() };
        Self::new(omega, n, trunc)
    }

    /// The rank-2 form `[[0, -1], [1, 0]]`.
    pub fn rank2(trunc: i64) -> Arc<Self> {
        let o = |x: i64| rat_i(x);
        Self::new(vec![vec![o(0), o(-1)], vec![o(1), o(0)]], 2, trunc).expect("nonsingular")
    }

    pub fn active(&self) -> usize {
        self.active
    }

    pub fn total(&self) -> usize {
        self.omega.len()
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn omega(&self) -> &[Vec<BigRational>] {
        &self.omega
    }

    /// `{n, m}_Ω` for an active `n` and a vector `m` over all generators
    /// (missing trailing entries are zero).
    pub fn pairing(&self, n: &ExpVector, m: &[i32]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, &a) in n.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in m.iter().enumerate() {
                if b != 0 && !self.omega[i][j].is_zero() {
                    s += &self.omega[i][j] * rat_i(a as i64 * b as i64);
                }
            }
        }
        s
    }

    fn unit_vec(&self, i: usize) -> Vec<i32> {
        let mut v = vec![0; self.total()];
        v[i] = 1;
        v
    }

    fn one(&self) -> Series {
        Series::one(self.active, self.trunc)
    }
}

fn is_singular(m: &[Vec<BigRational>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return true };
        a.swap(col, p);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    false
}

/// A group element, stored as the images `g(yᵢ) = yᵢ·uᵢ` of all generators
/// with each `uᵢ` a unit series in the active variables.
#[derive(Clone, Debug)]
pub struct GroupElement {
    ctx: Arc<GroupContext>,
    units: Vec<Series>,
}

impl GroupElement {
    pub fn identity(ctx: &Arc<GroupContext>) -> Self {
        GroupElement { ctx: ctx.clone(), units: vec![ctx.one(); ctx.total()] }
    }

    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    /// The unit series `uᵢ` with `g(yᵢ) = yᵢ·uᵢ`.
    pub fn unit(&self, i: usize) -> &Series {
        &self.units[i]
    }

    pub fn is_identity(&self) -> bool {
        self.units.iter().all(Series::is_one)
    }

    fn check_ctx(&self, other: &Self) -> Result<(), ScatterError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(ScatterError::MixedContext)
        }
    }

    /// `Π_j uⱼ^{mⱼ}`, the unit part of `g(y^m)` for `m` over all generators.
    pub fn monomial_unit(&self, m: &[i32]) -> Series {
        let mut s = self.ctx.one();
        for (j, &k) in m.iter().enumerate() {
            if k != 0 && !self.units[j].is_one() {
                s = s.mul(&self.units[j].unit_pow_int(k as i64));
            }
        }
        s
    }

    /// `Ψ[n]^c · self`: the dilogarithm action applied monomialwise to every image.
    pub fn left_mul_psi(&self, n: &ExpVector, c: &BigRational) -> Self {
        let ctx = &self.ctx;
        let (na, tr) = (ctx.active, ctx.trunc);
        let mut cache: HashMap<BigRational, Series> = HashMap::new();
        let mut binom = |r: BigRational| -> Series {
            cache.entry(r.clone()).or_insert_with(|| Series::binomial(na, tr, n, &r)).clone()
        };
        let units = self
            .units
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let base = c * ctx.pairing(n, &ctx.unit_vec(i));
                let mut out = Series::zero(na, tr);
                for (m, coef) in u.terms() {
                    let r = &base + c * ctx.pairing(n, &m.0);
                    let b = binom(r);
                    out.add_assign(&b.scale(coef).shift(m));
                }
                out
            })
            .collect();
        GroupElement { ctx: ctx.clone(), units }
    }

    /// `self · Ψ[n]^c`, using `g(yᵢ(1+yⁿ)^r) = g(yᵢ)·(1+g(yⁿ))^r`.
    pub fn right_mul_psi(&self, n: &ExpVector, c: &BigRational) -> Self {
        let ctx = &self.ctx;
        let mut padded = n.0.clone();
        padded.resize(ctx.total(), 0);
        let w = self.monomial_unit(&padded).shift(n).truncate(ctx.trunc);
        let one_plus_w = ctx.one().add(&w);
        let units = self
            .units
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let r = c * ctx.pairing(n, &ctx.unit_vec(i));
                if r.is_zero() {
                    u.clone()
                } else {
                    u.mul(&one_plus_w.unit_pow(&r))
                }
            })
            .collect();
        GroupElement { ctx: ctx.clone(), units }
    }

    /// Composition `self ∘ other`, i.e. the product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, ScatterError> {
        self.check_ctx(other)?;
        let ctx = &self.ctx;
        let mut memo: HashMap<ExpVector, Series> = HashMap::new();
        let units = other
            .units
            .iter()
            .zip(&self.units)
            .map(|(ub, ua)| {
                let mut acc = Series::zero(ctx.active, ctx.trunc);
                for (m, coef) in ub.terms() {
                    let a = self.active_power(m, &mut memo);
                    acc.add_assign(&a.scale(coef).shift(m));
                }
                ua.mul(&acc)
            })
            .collect();
        Ok(GroupElement { ctx: ctx.clone(), units })
    }

    /// `Π_{j active} uⱼ^{mⱼ}` for nonnegative `m`, known to degree `ℓ − deg m`.
    fn active_power(&self, m: &ExpVector, memo: &mut HashMap<ExpVector, Series>) -> Series {
        if let Some(s) = memo.get(m) {
            return s.clone();
        }
        let s = match m.0.iter().position(|&x| x > 0) {
            None => self.ctx.one(),
            Some(j) => {
                let mut prev = m.clone();
                prev.0[j] -= 1;
                let p = self.active_power(&prev, memo);
                p.mul(&self.units[j]).truncate(self.ctx.trunc - m.degree())
            }
        };
        memo.insert(m.clone(), s.clone());
        s
    }

    /// The inverse, by fixed-point iteration on `g⁻¹(g(yᵢ)) = yᵢ`.
    pub fn inverse(&self) -> Self {
        let ctx = &self.ctx;
        let mut inv = GroupElement::identity(ctx);
        for _ in 0..=ctx.trunc {
            // (inv · self)(yᵢ) = inv(yᵢ)·inv(self's unit) = yᵢ  ⇒  vᵢ = 1 / inv(uᵢ).
            let mut memo = HashMap::new();
            let units: Vec<Series> = self
                .units
                .iter()
                .map(|u| {
                    let mut acc = Series::zero(ctx.active, ctx.trunc);
                    for (m, coef) in u.terms() {
                        acc.add_assign(&inv.active_power(m, &mut memo).scale(coef).shift(m));
                    }
                    acc.unit_inverse()
                })
                .collect();
            let next = GroupElement { ctx: ctx.clone(), units };
            if next.units == inv.units {
                break;
            }
            inv = next;
        }
        inv
    }

    /// Equality of all generator images modulo degree above the truncation.
    pub fn group_eq(&self, other: &Self) -> Result<bool, ScatterError> {
        self.check_ctx(other)?;
        Ok(self.units == other.units)
    }

    /// For `g ≡ id` below degree `d` and `d` minimal, the degree-`d` Lie
    /// coefficients `a_m` with `g = exp(Σ a_m X_m + higher)`.
    pub fn lowest_discrepancy(&self) -> Result<Option<(i64, LieElement)>, ScatterError> {
        let ctx = &self.ctx;
        let one = ctx.one();
        let devs: Vec<Series> = self.units.iter().map(|u| u.sub(&one)).collect();
        let Some(d) = devs.iter().filter_map(Series::valuation).min() else { return Ok(None) };
        let parts: Vec<Series> = devs.iter().map(|s| s.homogeneous(d)).collect();
        let mut support: Vec<ExpVector> = parts.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
        support.sort();
        support.dedup();
        let mut coeffs = BTreeMap::new();
        for m in support {
            let pairs: Vec<BigRational> = (0..ctx.total()).map(|i| ctx.pairing(&m, &ctx.unit_vec(i))).collect();
            let Some(i) = pairs.iter().position(|p| !p.is_zero()) else {
                return Err(ScatterError::NonFactorizable { degree: d });
            };
            let a = parts[i].coeff(&m) / &pairs[i];
            for (j, p) in pairs.iter().enumerate() {
                if parts[j].coeff(&m) != &a * p {
                    return Err(ScatterError::NonFactorizable { degree: d });
                }
            }
            coeffs.insert(m, a);
        }
        Ok(Some((d, LieElement { coeffs })))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trunc": self.ctx.trunc,
            "images": self.units.iter().enumerate().map(|(i, u)| json!({"generator": i, "unit": u.to_json()})).collect::<Vec<_>>(),
        })
    }
}

/// `Ψ[n]^c` acting by `y^{n'} ↦ y^{n'}(1+yⁿ)^{c·{n,n'}}`.
pub fn psi_element(n: &ExpVector, c: &BigRational, ctx: &Arc<GroupContext>) -> Result<GroupElement, ScatterError> {
    if n.dim() != ctx.active || !n.is_nonnegative() || n.is_zero() {
        return Err(ScatterError::BadVector(n.clone()));
    }
    Ok(GroupElement::identity(ctx).left_mul_psi(n, c))
}

pub fn group_mul(a: &GroupElement, b: &GroupElement) -> Result<GroupElement, ScatterError> {
    a.mul(b)
}

pub fn group_eq(a: &GroupElement, b: &GroupElement) -> Result<bool, ScatterError> {
    a.group_eq(b)
}

/// An element `Σ a_m X_m` of the truncated Lie algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    pub coeffs: BTreeMap<ExpVector, BigRational>,
}

impl LieElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            let e = out.coeffs.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = LieElement::default();
        if !k.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        }
        out
    }

    /// `[X_n, X_m] = {n, m} X_{n+m}`, dropping degrees above `ℓ`.
    pub fn bracket(&self, other: &Self, ctx: &GroupContext) -> Self {
        let mut out = LieElement::default();
        for (n, a) in &self.coeffs {
            for (m, b) in &other.coeffs {
                let p = ctx.pairing(n, &m.0);
                if p.is_zero() || n.degree() + m.degree() > ctx.trunc {
                    continue;
                }
                let e = out.coeffs.entry(n + m).or_insert_with(BigRational::zero);
                *e += a * b * p;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    /// The derivation `X̃` on the unit part of generator `i`.
    fn act(&self, ctx: &GroupContext, i: usize, s: &Series) -> Series {
        let mut out = Series::zero(ctx.active, ctx.trunc);
        let ei = ctx.unit_vec(i);
        for (m, c) in s.terms() {
            let mut full: Vec<i32> = ei.clone();
            for (k, &x) in m.0.iter().enumerate() {
                full[k] += x;
            }
            for (n, a) in &self.coeffs {
                let p = ctx.pairing(n, &full);
                if !p.is_zero() {
                    out.add_term(m + n, a * c * p);
                }
            }
        }
        out
    }

    /// `exp(X)` through its action `Σ X̃ᵏ/k!`.
    pub fn exp(&self, ctx: &Arc<GroupContext>) -> GroupElement {
        let units = (0..ctx.total())
            .map(|i| {
                let mut total = ctx.one();
                let mut term = ctx.one();
                let mut k = 1;
                loop {
                    term = self.act(ctx, i, &term).scale(&(BigRational::one() / rat_i(k)));
                    if term.is_zero() {
                        break;
                    }
                    total.add_assign(&term);
                    k += 1;
                }
                total
            })
            .collect();
        GroupElement { ctx: ctx.clone(), units }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|(m, c)| json!({"n": m.0, "coeff": c.to_string()})).collect())
    }
}

/// The logarithm of a group element, built degree by degree.
pub fn group_log(g: &GroupElement) -> Result<LieElement, ScatterError> {
    let ctx = g.context();
    let mut x = LieElement::default();
    for _ in 0..=ctx.trunc {
        let h = x.scale(&-BigRational::one()).exp(ctx).mul(g)?;
        match h.lowest_discrepancy()? {
            None => return Ok(x),
            Some((_, dx)) => x = x.add(&dx),
        }
    }
    Ok(x)
}
