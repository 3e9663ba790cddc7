//! Truncated power series in the active variables.

use std::collections::BTreeMap;
use std::fmt;

use cdl_algebra::{BigRational, ExpVector};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

/// A power series in `nvars` variables with all terms of total degree above
/// `trunc` discarded.
#[derive(Clone)]
pub struct Series {
    nvars: usize,
    trunc: i64,
    terms: BTreeMap<ExpVector, BigRational>,
}

impl Series {
    pub fn zero(nvars: usize, trunc: i64) -> Self {
        Series { nvars, trunc, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, trunc: i64) -> Self {
        Self::monomial(nvars, trunc, ExpVector::zeros(nvars), BigRational::one())
    }

    pub fn monomial(nvars: usize, trunc: i64, e: ExpVector, c: BigRational) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.add_term(e, c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&ExpVector::zeros(self.nvars)).is_one()
    }

    /// Terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVector) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c·y^e`, dropping it if `e` is beyond the truncation.
    pub fn add_term(&mut self, e: ExpVector, c: BigRational) {
        debug_assert_eq!(e.dim(), self.nvars);
        if c.is_zero() || e.degree() > self.trunc {
            return;
        }
        use std::collections::btree_map::Entry;
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

    /// Lowest total degree present.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().map(|e| e.degree())
    }

    /// The part of total degree `d`.
    pub fn homogeneous(&self, d: i64) -> Series {
        let mut s = Self::zero(self.nvars, self.trunc);
        for (e, c) in &self.terms {
            if e.degree() == d {
                s.terms.insert(e.clone(), c.clone());
            }
        }
        s
    }

    /// Same series re-truncated at a lower degree.
    pub fn truncate(&self, trunc: i64) -> Series {
        let mut s = Self::zero(self.nvars, trunc.min(self.trunc));
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn add_assign(&mut self, other: &Series) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let mut s = self.clone();
        for (e, c) in &other.terms {
            s.add_term(e.clone(), -c.clone());
        }
        s
    }

    pub fn scale(&self, k: &BigRational) -> Series {
        let mut s = Self::zero(self.nvars, self.trunc);
        if k.is_zero() {
            return s;
        }
        for (e, c) in &self.terms {
            s.terms.insert(e.clone(), c * k);
        }
        s
    }

    /// Multiplication by `y^e` for nonnegative `e`; the truncation moves up by `deg e`.
    pub fn shift(&self, e: &ExpVector) -> Series {
        let mut s = Self::zero(self.nvars, self.trunc + e.degree());
        for (f, c) in &self.terms {
            s.add_term(f + e, c.clone());
        }
        s
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut s = Self::zero(self.nvars, self.trunc.min(other.trunc));
        for (e1, c1) in &self.terms {
            let room = s.trunc - e1.degree();
            for (e2, c2) in &other.terms {
                if e2.degree() > room {
                    break;
                }
                s.add_term(e1 + e2, c1 * c2);
            }
        }
        s
    }

    /// Splits into homogeneous components `0..=trunc`.
    fn graded(&self) -> Vec<Series> {
        let mut parts = vec![Self::zero(self.nvars, self.trunc); (self.trunc.max(0) + 1) as usize];
        for (e, c) in &self.terms {
            parts[e.degree() as usize].terms.insert(e.clone(), c.clone());
        }
        parts
    }

    fn constant(&self) -> BigRational {
        self.coeff(&ExpVector::zeros(self.nvars))
    }

    /// `self^r` for a series with constant term 1 and any rational `r`.
    ///
    /// Uses the Euler-operator recursion `u·E(f) = r·f·E(u)` degree by degree.
    pub fn unit_pow(&self, r: &BigRational) -> Series {
        assert!(self.constant().is_one(), "unit_pow needs constant term 1");
        let u = self.graded();
        let mut f: Vec<Series> = vec![Self::one(self.nvars, self.trunc)];
        let r1 = r + BigRational::one();
        for d in 1..=self.trunc {
            let mut acc = Self::zero(self.nvars, self.trunc);
            for j in 1..=d {
                if u[j as usize].is_zero() || f[(d - j) as usize].is_zero() {
                    continue;
                }
                let w = &r1 * rat_i(j) - rat_i(d);
                if w.is_zero() {
                    continue;
                }
                acc.add_assign(&u[j as usize].mul(&f[(d - j) as usize]).scale(&w));
            }
            f.push(acc.scale(&(BigRational::one() / rat_i(d))));
        }
        let mut out = Self::zero(self.nvars, self.trunc);
        for p in f {
            out.add_assign(&p);
        }
        out
    }

    pub fn unit_pow_int(&self, k: i64) -> Series {
        match k {
            0 => Self::one(self.nvars, self.trunc),
            1 => self.clone(),
            _ => self.unit_pow(&rat_i(k)),
        }
    }

    pub fn unit_inverse(&self) -> Series {
        self.unit_pow_int(-1)
    }

    /// `log(self)` for a series with constant term 1.
    pub fn unit_log(&self) -> Series {
        assert!(self.constant().is_one(), "unit_log needs constant term 1");
        // E(log u) = E(u)/u, solved degree by degree.
        let u = self.graded();
        let mut g: Vec<Series> = vec![Self::zero(self.nvars, self.trunc)];
        for d in 1..=self.trunc {
            // d·g_d = d·u_d − Σ_{j=1}^{d−1} (d−j)·u_j·g_{d−j}
            let mut acc = u[d as usize].scale(&rat_i(d));
            for j in 1..d {
                if u[j as usize].is_zero() || g[(d - j) as usize].is_zero() {
                    continue;
                }
                acc = acc.sub(&u[j as usize].mul(&g[(d - j) as usize]).scale(&rat_i(d - j)));
            }
            g.push(acc.scale(&(BigRational::one() / rat_i(d))));
        }
        let mut out = Self::zero(self.nvars, self.trunc);
        for p in g {
            out.add_assign(&p);
        }
        out
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp(&self) -> Series {
        assert!(self.constant().is_zero(), "exp needs zero constant term");
        let v = self.graded();
        let mut f: Vec<Series> = vec![Self::one(self.nvars, self.trunc)];
        for d in 1..=self.trunc {
            // d·f_d = Σ_{j=1}^{d} j·v_j·f_{d−j}
            let mut acc = Self::zero(self.nvars, self.trunc);
            for j in 1..=d {
                if v[j as usize].is_zero() || f[(d - j) as usize].is_zero() {
                    continue;
                }
                acc.add_assign(&v[j as usize].mul(&f[(d - j) as usize]).scale(&rat_i(j)));
            }
            f.push(acc.scale(&(BigRational::one() / rat_i(d))));
        }
        let mut out = Self::zero(self.nvars, self.trunc);
        for p in f {
            out.add_assign(&p);
        }
        out
    }

    /// `Σ_{j≥1} w_j·self^j` for a series with zero constant term.
    pub fn compose_univariate(&self, weight: impl Fn(i64) -> BigRational) -> Series {
        let mut out = Self::zero(self.nvars, self.trunc);
        let Some(v) = self.valuation() else { return out };
        assert!(v > 0, "composition needs zero constant term");
        let mut power = self.clone();
        let mut j = 1;
        while !power.is_zero() {
            out.add_assign(&power.scale(&weight(j)));
            power = power.mul(self);
            j += 1;
        }
        out
    }

    /// `(1 + c·y^n)^r` expanded by the binomial series.
    pub fn binomial(nvars: usize, trunc: i64, n: &ExpVector, r: &BigRational) -> Series {
        let mut s = Self::one(nvars, trunc);
        if r.is_zero() {
            return s;
        }
        let dn = n.degree();
        assert!(dn > 0, "binomial needs a positive exponent");
        let mut coef = BigRational::one();
        let mut k = 1;
        while k * dn <= trunc {
            coef = coef * (r - rat_i(k - 1)) / rat_i(k);
            if coef.is_zero() {
                break;
            }
            s.add_term(n.scale(k as i32), coef.clone());
            k += 1;
        }
        s
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({"exp": e.0, "coeff": c.to_string()}))
                .collect(),
        )
    }
}

/// Equality of coefficients; the truncation orders are not compared.
impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for Series {}

pub(crate) fn rat_i(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}·y^{e}")).collect();
        write!(f, "{} + O({})", parts.join(" + "), self.trunc + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cdl_algebra::{int, rat};

    fn ev(v: &[i32]) -> ExpVector {
        ExpVector(v.to_vec())
    }

    #[test]
    fn unit_pow_matches_repeated_multiplication() {
        let u = {
            let mut s = Series::one(2, 6);
            s.add_term(ev(&[1, 0]), int(2));
            s.add_term(ev(&[0, 1]), rat(1, 3));
            s.add_term(ev(&[1, 1]), int(-1));
            s
        };
        let cube = u.mul(&u).mul(&u);
        assert_eq!(u.unit_pow_int(3), cube);
        assert!(u.unit_pow_int(-3).mul(&cube).is_one());
        let half = u.unit_pow(&rat(1, 2));
        assert_eq!(half.mul(&half), u);
    }

    #[test]
    fn log_and_exp_are_inverse() {
        let mut v = Series::zero(2, 7);
        v.add_term(ev(&[1, 0]), rat(3, 2));
        v.add_term(ev(&[1, 2]), int(-4));
        let e = v.exp();
        assert_eq!(e.unit_log(), v);
        let b = Series::binomial(2, 7, &ev(&[1, 1]), &int(2));
        assert_eq!(b.unit_log().exp(), b);
    }

    #[test]
    fn binomial_agrees_with_unit_pow() {
        let base = Series::binomial(2, 9, &ev(&[1, 2]), &int(1));
        assert_eq!(Series::binomial(2, 9, &ev(&[1, 2]), &rat(-5, 3)), base.unit_pow(&rat(-5, 3)));
    }
}
