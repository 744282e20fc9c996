//! Brute-force reference path: the full two-qubit thermal master equation
//! on 4×4 density matrices, and the general Wootters concurrence.
//!
//! Nothing here uses the closed-form propagator; it exists to check it.

mod density;
mod lindblad;
mod wootters;

pub use density::{embed_xstate, extract_xstate, DensityMatrix4, Operator4, X_PATTERN_TOL};
pub use lindblad::{
    default_dt, integrate, lindblad_rhs, Jump, JumpChannel, LindbladSpec, Qubit, HALVING_TOL,
    TRACE_DRIFT_TOL,
};
pub use wootters::{spin_flip, wootters_concurrence};
