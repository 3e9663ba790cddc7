//! Dilogarithm functions and the two verification routes for the identity
//! attached to a mutation period: numeric sampling and symbolic constancy.

mod error;
mod numeric;
mod real;
mod wedge;

pub use error::DilogError;
pub use numeric::{di_sums, sample_points, verify_period_di, DIReport, DISums};
pub use real::{li2, mod_rogers, rogers, PI2_6};
pub use wedge::{vt_check, vt_element, wedge_check, wedge_of, Generator, VtReport, WedgeElement};
