//! Exact polynomial arithmetic over big rationals and factored subtraction-free values.

mod error;
mod expvec;
mod factored;
mod intern;
mod poly;

pub use error::AlgebraError;
pub use expvec::{ExpVector, LaurentMonomial};
pub use factored::FactoredSF;
pub use intern::{atom, intern, AtomId};
pub use poly::{exact_div, MultiPoly};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for a rational from two machine integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses a rational written either as an integer or as `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::Malformed(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}
