use cdl_algebra::{exact_div, AlgebraError, ExpVector, MultiPoly};
use cdl_seed::{identity, mutate_matrix, ExchangeMatrix, IntMatrix, SeedError};

/// B, C, G and the F-polynomials at one vertex of the exchange graph.
///
/// `f` is empty for tropical-only runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedState {
    pub b: ExchangeMatrix,
    pub c: IntMatrix,
    pub g: IntMatrix,
    pub f: Vec<MultiPoly>,
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// Column `k` of `m` as an exponent vector.
pub(crate) fn column(m: &IntMatrix, k: usize) -> ExpVector {
    ExpVector(m.iter().map(|r| r[k] as i32).collect())
}

/// C-matrix mutation in its sign-`eps` form.
pub fn mutate_c(c: &IntMatrix, b: &ExchangeMatrix, k: usize, eps: i64) -> IntMatrix {
    let n = c.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == k {
                        -c[i][k]
                    } else {
                        c[i][j] + c[i][k] * pos(eps * b.get(k, j)) + pos(-eps * c[i][k]) * b.get(k, j)
                    }
                })
                .collect()
        })
        .collect()
}

/// G-matrix mutation in its sign-`eps` form; `b0` is the initial exchange matrix.
pub fn mutate_g(g: &IntMatrix, c: &IntMatrix, b: &ExchangeMatrix, b0: &ExchangeMatrix, k: usize, eps: i64) -> IntMatrix {
    let n = g.len();
    let mut out = g.clone();
    for (i, row) in out.iter_mut().enumerate() {
        let mut v = -g[i][k];
        for l in 0..n {
            v += g[i][l] * pos(-eps * b.get(l, k));
            v -= b0.get(i, l) * pos(-eps * c[l][k]);
        }
        row[k] = v;
    }
    out
}

impl SeedState {
    pub fn initial(b: &ExchangeMatrix, with_f: bool) -> Self {
        let n = b.rank();
        SeedState {
            b: b.clone(),
            c: identity(n),
            g: identity(n),
            f: if with_f { vec![MultiPoly::one(n); n] } else { Vec::new() },
        }
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    pub fn c_vector(&self, k: usize) -> ExpVector {
        column(&self.c, k)
    }

    pub fn g_vector(&self, k: usize) -> ExpVector {
        column(&self.g, k)
    }

    /// Common sign of column `k` of C, or `None` if it is zero or mixed.
    pub fn tropical_sign(&self, k: usize) -> Option<i64> {
        let col = self.c_vector(k);
        if col.is_zero() {
            None
        } else if col.is_nonnegative() {
            Some(1)
        } else if (-&col).is_nonnegative() {
            Some(-1)
        } else {
            None
        }
    }

    /// Mutation in direction `k` with the tropical sign; `b0` is the initial matrix.
    pub fn mutate(&self, k: usize, b0: &ExchangeMatrix) -> Result<(SeedState, i64), MutateError> {
        let n = self.rank();
        if k >= n {
            return Err(MutateError::Seed(SeedError::BadDirection { k, n }));
        }
        let eps = self.tropical_sign(k).ok_or(MutateError::NotSignCoherent)?;
        let c = mutate_c(&self.c, &self.b, k, eps);
        let g = mutate_g(&self.g, &self.c, &self.b, b0, k, eps);
        let b = mutate_matrix(&self.b, k, eps).map_err(MutateError::Seed)?;
        let f = if self.f.is_empty() { Vec::new() } else { self.mutate_f(k).map_err(MutateError::Algebra)? };
        Ok((SeedState { b, c, g, f }, eps))
    }

    /// The two monomials of the F-exchange relation, before division by `F_k`.
    pub(crate) fn exchange_products(&self, k: usize) -> (MultiPoly, MultiPoly) {
        let n = self.rank();
        let ck = self.c_vector(k);
        let mut plus = MultiPoly::monomial(ck.pos_part());
        let mut minus = MultiPoly::monomial((-&ck).pos_part());
        for l in 0..n {
            let blk = self.b.get(l, k);
            if blk > 0 {
                plus = &plus * &self.f[l].pow(blk as u32);
            } else if blk < 0 {
                minus = &minus * &self.f[l].pow((-blk) as u32);
            }
        }
        (plus, minus)
    }

    fn mutate_f(&self, k: usize) -> Result<Vec<MultiPoly>, AlgebraError> {
        let (plus, minus) = self.exchange_products(k);
        let mut f = self.f.clone();
        f[k] = exact_div(&(&plus + &minus), &self.f[k])?;
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutateError {
    NotSignCoherent,
    Seed(SeedError),
    Algebra(AlgebraError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_steps_are_involutions() {
        for b in [vec![vec![0, -1], vec![1, 0]], vec![vec![0, -1], vec![2, 0]], vec![vec![0, -1], vec![3, 0]]] {
            let b0 = ExchangeMatrix::new(b).unwrap();
            let mut s = SeedState::initial(&b0, true);
            for step in 0..6 {
                let k = step % 2;
                let (t, _) = s.mutate(k, &b0).unwrap();
                let (back, _) = t.mutate(k, &b0).unwrap();
                assert_eq!(back, s);
                s = t;
            }
        }
    }

    #[test]
    fn eps_forms_agree_on_b2() {
        let b0 = ExchangeMatrix::new(vec![vec![0, -1], vec![2, 0]]).unwrap();
        let mut s = SeedState::initial(&b0, false);
        for step in 0..6 {
            let k = step % 2;
            assert_eq!(mutate_c(&s.c, &s.b, k, 1), mutate_c(&s.c, &s.b, k, -1));
            assert_eq!(mutate_g(&s.g, &s.c, &s.b, &b0, k, 1), mutate_g(&s.g, &s.c, &s.b, &b0, k, -1));
            s = s.mutate(k, &b0).unwrap().0;
        }
    }
}
