//! Quantum Y-variables in the truncated q-commutative Laurent algebra, the
//! quantum dilogarithm and its group-element form, and checks of the
//! quantum dilogarithm identities.

mod element;
mod error;
mod laurent;
mod mutation;
mod qcoeff;
mod series;
mod verify;

pub use element::{q_ordered_product, qpsi_action, QDilogFactor, QGroupElement};
pub use error::QuantumError;
pub use laurent::{ordered_monomial, q_poly, QContext, QLaurentElement};
pub use mutation::{quantum_mutate, quantum_run, QState};
pub use qcoeff::QCoeff;
pub use series::{e_q_coefficient, e_q_series, power_series, psi_q_coefficient, psi_q_power, psi_q_series, q_binomial, q_factorial, q_number};
pub use verify::{
    classical_limit_check, psi_q_difference_check, q_binomial_check, qcsd_ordered_side, qcsd_wall_identity, verify_q_pentagon,
    verify_qdi_tropical, verify_qdi_universal, LimitTarget, QReport, QcsdCase,
};
