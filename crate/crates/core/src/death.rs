//! First time at which an X state becomes fully disentangled.
//!
//! The margin `f(t) = |z(t)| − √(a(t) d(t))` is scanned forward on a grid of
//! `0.01 / Γ(2n̄+1)` up to `60 / Γ(2n̄+1)`; the first sign change is refined
//! by bisection. Crossings narrower than one scan step are not resolved.

use crate::energy::{energy_report, QubitEnergy};
use crate::error::{Error, Result};
use crate::thermal::{decay_pair, propagate, BathParams, NoiseFactors};
use crate::xstate::XState;

/// Scan resolution in units of the relaxation time `1 / Γ(2n̄+1)`.
pub const SCAN_STEP: f64 = 0.01;
/// Scan horizon in units of the relaxation time.
pub const HORIZON: f64 = 60.0;

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuddenDeath {
    /// Upper end of the final bracket; the state is separable here.
    pub time: f64,
    pub omega_sq: f64,
    pub delta_e: f64,
    /// `(t_low, t_high)` with `f(t_low) > 0 ≥ f(t_high)`.
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeathResult {
    /// Concurrence is already zero at `t = 0`.
    AlreadySeparable,
    /// No crossing before the horizon; only possible at zero temperature.
    Never {
        horizon: f64,
    },
    Finite(SuddenDeath),
}

impl DeathResult {
    pub fn time(&self) -> Option<f64> {
        match self {
            DeathResult::AlreadySeparable => Some(0.0),
            DeathResult::Never { .. } => None,
            DeathResult::Finite(d) => Some(d.time),
        }
    }
}

/// Default bisection tolerance, `1e-9 / Γ(2n̄+1)`.
pub fn default_time_tol(bath: &BathParams) -> f64 {
    1e-9 / bath.total_rate()
}

struct Margin<'a> {
    x0: &'a XState,
    bath: &'a BathParams,
    nf: NoiseFactors,
}

impl Margin<'_> {
    fn at(&self, t: f64) -> Result<f64> {
        let pair = decay_pair(self.bath, t)?;
        Ok(propagate(self.x0, &self.nf, &pair).entanglement_margin())
    }
}

pub fn death_time(
    x0: &XState,
    bath: &BathParams,
    eq: &QubitEnergy,
    t_tol: f64,
) -> Result<DeathResult> {
    if !(t_tol.is_finite() && t_tol > 0.0) {
        return Err(Error::InvalidTolerance(t_tol));
    }
    let margin = Margin {
        x0,
        bath,
        nf: bath.noise_factors(),
    };
    if margin.at(0.0)? <= 0.0 {
        return Ok(DeathResult::AlreadySeparable);
    }

    let step = SCAN_STEP / bath.total_rate();
    let horizon = HORIZON / bath.total_rate();
    let n_scan = (HORIZON / SCAN_STEP).round() as usize;

    let mut lo = 0.0;
    let mut hi = None;
    for k in 1..=n_scan {
        let t = k as f64 * step;
        if margin.at(t)? <= 0.0 {
            hi = Some(t);
            break;
        }
        lo = t;
    }
    let Some(mut hi) = hi else {
        return Ok(DeathResult::Never { horizon });
    };

    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= t_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if margin.at(mid)? <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let report = energy_report(x0, bath, hi, eq)?;
    Ok(DeathResult::Finite(SuddenDeath {
        time: hi,
        omega_sq: decay_pair(bath, hi)?.omega_sq,
        delta_e: report.delta_e,
        bracket: (lo, hi),
    }))
}

/// Energy dissipated by qubit A up to the death time.
pub fn energy_at_death(
    x0: &XState,
    bath: &BathParams,
    eq: &QubitEnergy,
    t_tol: f64,
) -> Result<f64> {
    match death_time(x0, bath, eq, t_tol)? {
        DeathResult::AlreadySeparable => Ok(0.0),
        DeathResult::Never { .. } => Err(Error::NoDeath("never")),
        DeathResult::Finite(d) => Ok(d.delta_e),
    }
}
