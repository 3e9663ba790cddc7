//! The degree-truncated structure group, dilogarithm elements and the rank-2
//! cluster scattering diagrams built from them.

mod csd;
mod error;
mod factor;
mod gfan;
mod group;
mod period;
mod series;

pub use csd::{build_rank2_csd, ccw_loop, loop_di_formal, path_ordered_product, Crossing, LogSeries, Rank2Diagram, Wall};
pub use error::ScatterError;
pub use factor::{group_log_factorize, normalization_factor, ordered_product, DilogFactor, RayFactors, SlopeOrder};
pub use gfan::{g_fan_embedding_check, rank2_runs, GFanReport};
pub use group::{group_eq, group_log, group_mul, psi_element, GroupContext, GroupElement, LieElement};
pub use period::{period_relation_check, period_relation_product};
pub use series::Series;
