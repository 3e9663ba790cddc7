use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::{ExchangeMatrix, SeedError};

/// A quiver without loops or 2-cycles. `b_ij > 0` means `b_ij` arrows `i → j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: BTreeMap<(usize, usize), u32>,
}

impl Quiver {
    pub fn new(n: usize, arrows: &[(usize, usize, u32)]) -> Result<Self, SeedError> {
        let mut q = Quiver { n, arrows: BTreeMap::new() };
        for &(i, j, m) in arrows {
            if i >= n || j >= n || i == j {
                return Err(SeedError::Malformed(format!("bad arrow {i}->{j}")));
            }
            if q.arrows.contains_key(&(j, i)) {
                return Err(SeedError::Malformed("2-cycle".into()));
            }
            if m > 0 {
                *q.arrows.entry((i, j)).or_insert(0) += m;
            }
        }
        Ok(q)
    }

    pub fn from_matrix(b: &ExchangeMatrix) -> Result<Self, SeedError> {
        if !b.is_skew_symmetric() {
            return Err(SeedError::Malformed("quivers need skew-symmetric matrices".into()));
        }
        let n = b.rank();
        let mut arrows = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if b.get(i, j) > 0 {
                    arrows.insert((i, j), b.get(i, j) as u32);
                }
            }
        }
        Ok(Quiver { n, arrows })
    }

    pub fn to_matrix(&self) -> ExchangeMatrix {
        let mut b = vec![vec![0i64; self.n]; self.n];
        for (&(i, j), &m) in &self.arrows {
            b[i][j] = m as i64;
            b[j][i] = -(m as i64);
        }
        ExchangeMatrix::new(b).expect("quiver matrices are skew-symmetric")
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.arrows
    }

    pub fn opposite(&self) -> Self {
        Quiver { n: self.n, arrows: self.arrows.iter().map(|(&(i, j), &m)| ((j, i), m)).collect() }
    }

    /// Quiver mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        let m = crate::mutate_matrix(&self.to_matrix(), k, 1)?;
        Quiver::from_matrix(&m)
    }

    /// `{"arrows": [[i, j, mult], ...]}`, 1-indexed.
    pub fn to_json(&self) -> Value {
        let arrows: Vec<Value> = self.arrows.iter().map(|(&(i, j), &m)| json!([i + 1, j + 1, m])).collect();
        json!({ "vertices": self.n, "arrows": arrows })
    }
}
