//! Two-qubit X states under independent, identical thermal amplitude-damping
//! baths.
//!
//! The crate evolves standard-form density matrices with a closed-form
//! propagator, computes their concurrence, locates the finite time at which
//! entanglement vanishes, and relates that event to the energy exchanged by a
//! single qubit. The [`oracle`] module integrates the full master equation on
//! 4×4 matrices and evaluates the general Wootters concurrence so that every
//! closed form can be checked independently.

pub mod death;
pub mod energy;
pub mod error;
pub mod oracle;
pub mod thermal;
pub mod xstate;

pub use death::{death_time, default_time_tol, energy_at_death, DeathResult, SuddenDeath};
pub use energy::{
    bell_bound, bell_death_omega_sq, energy_report, general_bound, general_death_omega_sq,
    mean_energy_a, omega_sq_from_delta_e, time_to_transfer, BoundVariant, EnergyReport,
    QubitEnergy,
};
pub use error::{Error, Result};
pub use thermal::{
    decay_pair, evolve_xstate, noise_factors, propagate, steady_state, time_for_omega_sq,
    BathParams, DecayPair, NoiseFactors,
};
pub use xstate::{
    concurrence_x, is_fully_disentangled, preset_state, random_entangled_xstate, random_xstate,
    Preset, XState,
};
