//! Y-systems of a pair of simply-laced Dynkin diagrams, realized as periodic
//! mutation sequences on a bipartite product quiver.

mod constant;
mod coxeter;
mod error;
mod quiver;
mod tropical;

pub use constant::{constant_ysystem_solve, ConstantSolution};
pub use coxeter::{bipartite_signs, coxeter_orbit, longest_element_check, CoxeterSystem, RootVector};
pub use error::YSystemError;
pub use quiver::{build_bipartite_word, BipartiteQuiver};
pub use tropical::{symbolic_half_periodicity, tropical_run, tropical_run_with, SymbolicReport, TropicalReport, DEFAULT_TERM_BUDGET};
