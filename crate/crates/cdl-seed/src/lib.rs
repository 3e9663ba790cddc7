//! Exchange matrices and the combinatorics around them.

mod dynkin;
mod error;
mod matrix;
mod perm;
mod quiver;

pub use dynkin::{classify_finite_type, DynkinType, Family};
pub use error::SeedError;
pub use matrix::{
    det, identity, is_sign_coherent, mat_mul, mutate_matrix, principal_extension, transpose, ExchangeMatrix, IntMatrix,
    SkewDecomposition,
};
pub use perm::Permutation;
pub use quiver::Quiver;
