//! The mutation engine: C/G/F recursions along a word, separation formulas,
//! tropical signs, dualities and periodicity.

mod error;
mod run;
mod state;

pub use error::PatternError;
pub use run::{di_weights, run_pattern, run_pattern_budgeted, run_tropical, DIWeights, MutationWord, PatternRun};
pub use state::{mutate_c, mutate_g, SeedState};
