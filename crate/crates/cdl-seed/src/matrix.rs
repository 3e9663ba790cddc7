use cdl_algebra::{BigInt, BigRational};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::SeedError;

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..m).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn det(a: &IntMatrix) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    &m[n - 1][n - 1] * sign
}

/// True if every column is nonzero with entries of one sign.
pub fn is_sign_coherent(c: &IntMatrix) -> bool {
    let n = c.len();
    (0..c.first().map_or(0, |r| r.len())).all(|j| {
        let col: Vec<i64> = (0..n).map(|i| c[i][j]).collect();
        col.iter().any(|&x| x != 0) && (col.iter().all(|&x| x >= 0) || col.iter().all(|&x| x <= 0))
    })
}

/// A skew-symmetrizable integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    b: IntMatrix,
}

/// `B = Δ Ω` with `Δ = diag(delta)` and `Ω` skew-symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDecomposition {
    pub delta: Vec<i64>,
    pub omega: Vec<Vec<BigRational>>,
}

impl ExchangeMatrix {
    pub fn new(b: IntMatrix) -> Result<Self, SeedError> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) {
            return Err(SeedError::Malformed("exchange matrix must be square".into()));
        }
        let m = ExchangeMatrix { b };
        m.symmetrizer()?;
        Ok(m)
    }

    /// Rank-2 matrix `[[0, -d1], [d2, 0]]`.
    pub fn rank2(d1: i64, d2: i64) -> Self {
        ExchangeMatrix { b: vec![vec![0, -d1], vec![d2, 0]] }
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn rows(&self) -> &IntMatrix {
        &self.b
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.b[i][j] == -self.b[j][i]))
    }

    /// Connected components of the graph with an edge where `b_ij != 0`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for w in 0..n {
                    if !seen[w] && self.b[v][w] != 0 {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Minimal positive integers `δ_i` with `(b_ij / δ_i)` skew-symmetric, per component.
    pub fn symmetrizer(&self) -> Result<Vec<i64>, SeedError> {
        let n = self.rank();
        for i in 0..n {
            if self.b[i][i] != 0 {
                return Err(SeedError::NotSkewSymmetrizable);
            }
            for j in 0..n {
                let (a, c) = (self.b[i][j], self.b[j][i]);
                if (a == 0) != (c == 0) || (a != 0 && a.signum() == c.signum()) {
                    return Err(SeedError::NotSkewSymmetrizable);
                }
            }
        }
        // δ_j / δ_i = -b_ji / b_ij, propagated over each component as a fraction p/q.
        let mut delta: Vec<Option<(i64, i64)>> = vec![None; n];
        for comp in self.components() {
            delta[comp[0]] = Some((1, 1));
            let mut stack = vec![comp[0]];
            while let Some(i) = stack.pop() {
                let (p, q) = delta[i].unwrap();
                for j in 0..n {
                    if self.b[i][j] == 0 {
                        continue;
                    }
                    let (np, nq) = (p * (-self.b[j][i]), q * self.b[i][j]);
                    let g = np.gcd(&nq) * nq.signum();
                    let v = (np / g, nq / g);
                    match delta[j] {
                        None => {
                            delta[j] = Some(v);
                            stack.push(j);
                        }
                        Some(w) if w != v => return Err(SeedError::NotSkewSymmetrizable),
                        _ => {}
                    }
                }
            }
            let l = comp.iter().fold(1i64, |l, &i| l.lcm(&delta[i].unwrap().1));
            let scaled: Vec<i64> = comp.iter().map(|&i| delta[i].unwrap().0 * (l / delta[i].unwrap().1)).collect();
            let g = scaled.iter().fold(0i64, |g, &x| g.gcd(&x));
            for (&i, s) in comp.iter().zip(scaled) {
                delta[i] = Some((s / g, 1));
            }
        }
        Ok(delta.into_iter().map(|d| d.unwrap().0).collect())
    }

    /// The decomposition with the minimal symmetrizer.
    pub fn decompose(&self) -> SkewDecomposition {
        let delta = self.symmetrizer().expect("validated on construction");
        self.decompose_with(&delta).expect("minimal symmetrizer is valid")
    }

    /// The decomposition for a caller-supplied `δ`, checked for skew-symmetry.
    pub fn decompose_with(&self, delta: &[i64]) -> Result<SkewDecomposition, SeedError> {
        let n = self.rank();
        if delta.len() != n || delta.iter().any(|&d| d <= 0) {
            return Err(SeedError::Malformed("delta must be positive with one entry per row".into()));
        }
        let omega: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| BigRational::new(self.b[i][j].into(), delta[i].into())).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if omega[i][j] != -omega[j][i].clone() {
                    return Err(SeedError::NotSkewSymmetrizable);
                }
            }
        }
        Ok(SkewDecomposition { delta: delta.to_vec(), omega })
    }

    pub fn to_json(&self) -> Value {
        json!({ "b": self.b })
    }

    /// Reads `{"b": [[...]], "delta": [...]}`; delta is optional.
    pub fn from_json(v: &Value) -> Result<(Self, Option<Vec<i64>>), SeedError> {
        let bad = |m: &str| SeedError::Malformed(m.to_string());
        let rows = v.get("b").and_then(|b| b.as_array()).ok_or_else(|| bad("missing \"b\""))?;
        let b: IntMatrix = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("row must be an array"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("entries must be integers")))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let m = ExchangeMatrix::new(b)?;
        let delta = match v.get("delta") {
            None | Some(Value::Null) => None,
            Some(d) => {
                let d: Vec<i64> = d
                    .as_array()
                    .ok_or_else(|| bad("delta must be an array"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("delta entries must be integers")))
                    .collect::<Result<_, _>>()?;
                m.decompose_with(&d)?;
                Some(d)
            }
        };
        Ok((m, delta))
    }
}

impl SkewDecomposition {
    pub fn rank(&self) -> usize {
        self.delta.len()
    }

    /// `{u, v} = uᵀ Ω v`.
    pub fn pairing(&self, u: &[i32], v: &[i32]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b != 0 && !self.omega[i][j].is_zero() {
                    s += &self.omega[i][j] * BigRational::from_integer(BigInt::from(a as i64 * b as i64));
                }
            }
        }
        s
    }

    pub fn is_singular(&self) -> bool {
        let n = self.rank();
        // Ω = Δ⁻¹B, so singularity of Ω is singularity of the integer matrix Δ·Ω·lcm.
        let l = self.omega.iter().flatten().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
        let m: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = &self.omega[i][j] * BigRational::from_integer(l.clone());
                        i64::try_from(v.to_integer()).expect("small entries")
                    })
                    .collect()
            })
            .collect();
        det(&m).is_zero()
    }

    /// The decomposition of the principal extension: `Δ ⊕ Δ` and
    /// `[[Ω, -Δ⁻¹], [Δ⁻¹, 0]]`.
    pub fn principal_extension(&self) -> SkewDecomposition {
        let n = self.rank();
        let mut omega = vec![vec![BigRational::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                omega[i][j] = self.omega[i][j].clone();
            }
            let inv = BigRational::new(1.into(), self.delta[i].into());
            omega[i][n + i] = -inv.clone();
            omega[n + i][i] = inv;
        }
        let mut delta = self.delta.clone();
        delta.extend_from_slice(&self.delta);
        SkewDecomposition { delta, omega }
    }

    /// Whether `Ω` is skew-symmetric (always true for values built here).
    pub fn is_skew(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.omega[i][j] == -self.omega[j][i].clone()))
    }

    pub fn max_abs_entry(&self) -> BigRational {
        self.omega.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// Matrix mutation in direction `k` written in its sign-`eps` form.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize, eps: i64) -> Result<ExchangeMatrix, SeedError> {
    let n = b.rank();
    if k >= n {
        return Err(SeedError::BadDirection { k, n });
    }
    assert!(eps == 1 || eps == -1);
    let m = &b.b;
    let out = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == k || j == k {
                        -m[i][j]
                    } else {
                        m[i][j] + m[i][k] * pos(eps * m[k][j]) + pos(-eps * m[i][k]) * m[k][j]
                    }
                })
                .collect()
        })
        .collect();
    Ok(ExchangeMatrix { b: out })
}

/// `[[B, -I], [I, O]]`.
pub fn principal_extension(b: &ExchangeMatrix) -> ExchangeMatrix {
    let n = b.rank();
    let mut m = vec![vec![0; 2 * n]; 2 * n];
    for i in 0..n {
        m[i][..n].copy_from_slice(&b.b[i]);
        m[i][n + i] = -1;
        m[n + i][i] = 1;
    }
    ExchangeMatrix { b: m }
}
