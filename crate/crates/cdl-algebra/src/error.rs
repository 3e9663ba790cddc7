use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomial division left a nonzero remainder")]
    NonDivisible,
    #[error("floating-point evaluation left the double range")]
    Overflow,
    #[error("zero polynomial cannot be a factor")]
    ZeroFactor,
    #[error("malformed input: {0}")]
    Malformed(String),
}
