use cdl_algebra::AlgebraError;
use cdl_seed::SeedError;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("duality {which} fails at step {step}")]
    DualityViolation { step: usize, which: &'static str },
    #[error("c-vector {k} at step {step} is not sign-coherent")]
    NotSignCoherent { step: usize, k: usize },
    #[error("invariant violated at step {step}: {what}")]
    InvariantViolation { step: usize, what: String },
    #[error("F-polynomials reached {terms} terms at step {step}")]
    BudgetExceeded { step: usize, terms: usize },
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
