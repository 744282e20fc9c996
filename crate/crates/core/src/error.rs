use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar argument lies outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Populations or coherence do not describe a valid X-form density matrix.
    #[error("invalid X state: {0}")]
    InvalidState(String),

    /// A 4x4 matrix is not Hermitian, unit-trace and positive semidefinite.
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    /// A matrix carries weight outside the X pattern.
    #[error("matrix left the X family: {0}")]
    Structure(String),

    #[error("unknown preset `{0}` (expected bell-plus, bell-minus, ye4-third or werner(p))")]
    UnknownPreset(String),

    /// The initial qubit-A inversion already sits at its thermal value, so the
    /// energy change carries no information about the elapsed damping.
    #[error(
        "energy-blind state: c + d - N1 - N3 = {0:e}, omega^2 cannot be recovered from energy"
    )]
    EnergyBlind(f64),

    /// The general energy bound has a vanishing denominator.
    #[error("energy bound undefined: |z| + (b + c) N3 = 0")]
    BoundUndefined,

    /// Closed-form and direct evaluations disagree; indicates a propagator bug.
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("integration did not converge: {0}")]
    NonConvergence(String),

    #[error("invariant violated during integration: {0}")]
    InvariantViolation(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("death time is {0}")]
    NoDeath(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
