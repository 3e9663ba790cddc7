use serde_json::{json, Value};

use crate::{ExchangeMatrix, SeedError};

/// A permutation of `0..n`; `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, SeedError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(SeedError::Malformed("not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    /// The left action on tuples: component `ν(i)` of the result is component `i` of `v`.
    pub fn act_on_vec<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (0..v.len()).map(|i| v[inv.images[i]].clone()).collect()
    }

    /// `b'_{ν(i)ν(j)} = b_{ij}`.
    pub fn act_on_matrix(&self, b: &ExchangeMatrix) -> ExchangeMatrix {
        let inv = self.inverse();
        let n = b.rank();
        let m = (0..n).map(|i| (0..n).map(|j| b.get(inv.images[i], inv.images[j])).collect()).collect();
        ExchangeMatrix::new(m).expect("relabeling preserves skew-symmetrizability")
    }

    /// One-line notation, 1-indexed.
    pub fn to_json(&self) -> Value {
        json!(self.images.iter().map(|i| i + 1).collect::<Vec<_>>())
    }

    pub fn from_one_line(v: &[usize]) -> Result<Self, SeedError> {
        if v.contains(&0) {
            return Err(SeedError::Malformed("one-line notation is 1-indexed".into()));
        }
        Self::new(v.iter().map(|i| i - 1).collect())
    }
}
