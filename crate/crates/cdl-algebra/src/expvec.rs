use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A lattice point. Used both for polynomial exponents and for Laurent monomials.
///
/// Ordered graded-lexicographically: total degree first, then entrywise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpVector(pub Vec<i32>);

/// A Laurent monomial with implicit coefficient 1.
pub type LaurentMonomial = ExpVector;

impl ExpVector {
    pub fn zeros(n: usize) -> Self {
        ExpVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExpVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Nonzero with all entries nonnegative.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    pub fn scale(&self, k: i32) -> Self {
        ExpVector(self.0.iter().map(|&e| e * k).collect())
    }

    pub fn cwise_min(&self, other: &Self) -> Self {
        ExpVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn cwise_max(&self, other: &Self) -> Self {
        ExpVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// Componentwise `[v]_+`.
    pub fn pos_part(&self) -> Self {
        ExpVector(self.0.iter().map(|&e| e.max(0)).collect())
    }

    /// True if `other - self` is nonnegative.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// Greatest common divisor of the entries (0 for the zero vector).
    pub fn content(&self) -> i32 {
        fn gcd(a: i32, b: i32) -> i32 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        self.0.iter().fold(0, |g, &e| gcd(g, e))
    }

    /// The primitive vector on the same ray, with the multiplier.
    pub fn primitive(&self) -> (Self, i32) {
        let g = self.content();
        if g == 0 {
            return (self.clone(), 0);
        }
        (ExpVector(self.0.iter().map(|&e| e / g).collect()), g)
    }
}

impl Ord for ExpVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExpVector {
    type Output = ExpVector;
    fn add(self, rhs: &ExpVector) -> ExpVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        ExpVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExpVector {
    type Output = ExpVector;
    fn sub(self, rhs: &ExpVector) -> ExpVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        ExpVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExpVector {
    type Output = ExpVector;
    fn neg(self) -> ExpVector {
        ExpVector(self.0.iter().map(|e| -e).collect())
    }
}

impl From<Vec<i32>> for ExpVector {
    fn from(v: Vec<i32>) -> Self {
        ExpVector(v)
    }
}

impl fmt::Debug for ExpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "y{}", i + 1)?;
            } else {
                write!(f, "y{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = ExpVector(vec![2, 0]);
        let b = ExpVector(vec![0, 3]);
        let c = ExpVector(vec![1, 1]);
        assert!(a < b);
        assert!(c < a);
        assert!(ExpVector::zeros(2) < c);
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(ExpVector(vec![4, 6]).primitive(), (ExpVector(vec![2, 3]), 2));
        assert_eq!(ExpVector(vec![0, -3]).primitive(), (ExpVector(vec![0, -1]), 3));
    }

    #[test]
    fn display() {
        assert_eq!(ExpVector(vec![1, -2, 0]).to_string(), "y1*y2^-2");
        assert_eq!(ExpVector::zeros(2).to_string(), "1");
    }
}
