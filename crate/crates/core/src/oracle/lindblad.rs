//! Thermal Lindblad generator and a fixed-step RK4 integrator with a
//! step-halving convergence check.
//!
//! The free Hamiltonian is dropped (interaction picture), so the generator
//! is purely dissipative: `Σ_k r_k (L_k ρ L_k† − ½{L_k† L_k, ρ})`.

use num_complex::Complex64;

use super::density::{hermiticity_defect, DensityMatrix4, Operator4};
use crate::error::{Error, Result};
use crate::thermal::{check_time, BathParams};

/// Maximum elementwise disagreement tolerated between successive step halvings.
pub const HALVING_TOL: f64 = 1e-9;

/// Maximum trace (and Hermiticity) drift tolerated at the end of a run.
pub const TRACE_DRIFT_TOL: f64 = 1e-9;

const MAX_HALVINGS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    A,
    B,
}

impl Qubit {
    /// Bit of the basis index carrying this qubit's level (set = |−⟩).
    fn mask(self) -> usize {
        match self {
            Qubit::A => 0b10,
            Qubit::B => 0b01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Jump {
    /// σ = |−⟩⟨+|
    Lowering,
    /// σ† = |+⟩⟨−|
    Raising,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpChannel {
    pub qubit: Qubit,
    pub jump: Jump,
    pub rate: f64,
}

impl JumpChannel {
    /// Whether `L` maps basis state `i` to a nonzero state.
    fn is_source(&self, i: usize) -> bool {
        let excited = i & self.qubit.mask() == 0;
        match self.jump {
            Jump::Lowering => excited,
            Jump::Raising => !excited,
        }
    }

    /// Adds `rate · D[L](rho)` to `out`.
    fn accumulate(&self, rho: &Operator4, out: &mut Operator4) {
        let mask = self.qubit.mask();
        let r = self.rate;
        for i in 0..4 {
            let src_i = self.is_source(i);
            for j in 0..4 {
                let src_j = self.is_source(j);
                let mut v = Complex64::new(0.0, 0.0);
                // i and j both lie in the image of L: pull back through the flip.
                if !src_i && !src_j {
                    v += rho[(i ^ mask, j ^ mask)];
                }
                let weight = 0.5 * (src_i as u8 + src_j as u8) as f64;
                v -= rho[(i, j)] * weight;
                out[(i, j)] += v * r;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LindbladSpec {
    channels: Vec<JumpChannel>,
}

impl LindbladSpec {
    pub fn new(channels: Vec<JumpChannel>) -> Result<Self> {
        if let Some(ch) = channels
            .iter()
            .find(|c| !(c.rate.is_finite() && c.rate >= 0.0))
        {
            return Err(Error::Domain(format!(
                "jump rate {} must be non-negative",
                ch.rate
            )));
        }
        Ok(Self { channels })
    }

    /// Lowering at Γ(n̄+1) and raising at Γn̄ on each qubit.
    pub fn thermal(bath: &BathParams) -> Self {
        let down = bath.gamma_rate() * (bath.nbar() + 1.0);
        let up = bath.gamma_rate() * bath.nbar();
        let channels = [Qubit::A, Qubit::B]
            .into_iter()
            .flat_map(|qubit| {
                [
                    JumpChannel {
                        qubit,
                        jump: Jump::Lowering,
                        rate: down,
                    },
                    JumpChannel {
                        qubit,
                        jump: Jump::Raising,
                        rate: up,
                    },
                ]
            })
            .collect();
        Self { channels }
    }

    pub fn channels(&self) -> &[JumpChannel] {
        &self.channels
    }

    /// Largest per-qubit total jump rate; equals Γ(2n̄+1) for thermal baths.
    pub fn relaxation_rate(&self) -> f64 {
        [Qubit::A, Qubit::B]
            .into_iter()
            .map(|q| {
                self.channels
                    .iter()
                    .filter(|c| c.qubit == q)
                    .map(|c| c.rate)
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// `dρ/dt` for the dissipative generator.
pub fn lindblad_rhs(rho: &Operator4, spec: &LindbladSpec) -> Operator4 {
    let mut out = Operator4::zeros();
    for ch in &spec.channels {
        ch.accumulate(rho, &mut out);
    }
    out
}

/// Default step, three orders of magnitude below the relaxation time.
pub fn default_dt(spec: &LindbladSpec) -> f64 {
    let rate = spec.relaxation_rate();
    if rate > 0.0 {
        1e-3 / rate
    } else {
        1e-3
    }
}

fn rk4(rho0: &Operator4, spec: &LindbladSpec, t: f64, steps: usize) -> Operator4 {
    let h = t / steps as f64;
    let mut rho = *rho0;
    for _ in 0..steps {
        let k1 = lindblad_rhs(&rho, spec);
        let k2 = lindblad_rhs(&(rho + k1.scale(0.5 * h)), spec);
        let k3 = lindblad_rhs(&(rho + k2.scale(0.5 * h)), spec);
        let k4 = lindblad_rhs(&(rho + k3.scale(h)), spec);
        rho += (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
    }
    rho
}

fn max_elementwise(a: &Operator4, b: &Operator4) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Integrates from `rho0` through time `t` with step at most `dt`, then
/// re-runs at half the step; the runs must agree within [`HALVING_TOL`].
/// Up to two halvings are attempted. Returns the finest run.
pub fn integrate(
    rho0: &DensityMatrix4,
    spec: &LindbladSpec,
    t: f64,
    dt: f64,
) -> Result<DensityMatrix4> {
    check_time(t)?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Domain(format!("step {dt} must be positive")));
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }

    let mut steps = (t / dt).ceil().max(1.0) as usize;
    let mut coarse = rk4(rho0.matrix(), spec, t, steps);
    let mut deviation = f64::INFINITY;
    let mut fine = coarse;
    for _ in 0..MAX_HALVINGS {
        steps *= 2;
        fine = rk4(rho0.matrix(), spec, t, steps);
        deviation = max_elementwise(&coarse, &fine);
        if deviation <= HALVING_TOL {
            break;
        }
        coarse = fine;
    }
    if deviation > HALVING_TOL {
        return Err(Error::NonConvergence(format!(
            "step-halving runs differ by {deviation:e} after {MAX_HALVINGS} halvings"
        )));
    }

    let drift = (fine.trace() - Complex64::new(1.0, 0.0)).norm();
    if drift > TRACE_DRIFT_TOL {
        return Err(Error::InvariantViolation(format!("trace drift {drift:e}")));
    }
    let herm = hermiticity_defect(&fine);
    if herm > TRACE_DRIFT_TOL {
        return Err(Error::InvariantViolation(format!(
            "Hermiticity defect {herm:e}"
        )));
    }
    Ok(DensityMatrix4::from_trusted(fine))
}
