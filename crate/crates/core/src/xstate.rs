//! Standard-form ("X") two-qubit density matrices.
//!
//! Basis order is |++⟩, |+−⟩, |−+⟩, |−−⟩ where |+⟩ is the excited level. An
//! X state is diagonal apart from the real coherence `z` between |+−⟩ and
//! |−+⟩.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance applied to trace and positivity when a state is constructed.
pub const STATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    z: f64,
}

impl XState {
    /// Validates and builds a state. Inputs outside [`STATE_TOL`] are
    /// rejected, never renormalized.
    pub fn new(a: f64, b: f64, c: f64, d: f64, z: f64) -> Result<Self> {
        let parts = [a, b, c, d, z];
        if parts.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidState(format!(
                "non-finite entry in {parts:?}"
            )));
        }
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if v < -STATE_TOL {
                return Err(Error::InvalidState(format!(
                    "population {name} = {v} is negative"
                )));
            }
        }
        let trace = a + b + c + d;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let bound = (b.max(0.0) * c.max(0.0)).sqrt();
        if z.abs() > bound + STATE_TOL {
            return Err(Error::InvalidState(format!(
                "|z| = {} exceeds sqrt(bc) = {bound}",
                z.abs()
            )));
        }
        Ok(Self { a, b, c, d, z })
    }

    /// Builds a state produced by trusted dynamics without re-validation.
    pub(crate) fn from_parts(a: f64, b: f64, c: f64, d: f64, z: f64) -> Self {
        Self { a, b, c, d, z }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    /// `[a, b, c, d, z]`.
    pub fn to_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.z]
    }

    pub fn trace(&self) -> f64 {
        self.a + self.b + self.c + self.d
    }

    /// Largest elementwise difference between two states.
    pub fn max_abs_diff(&self, other: &XState) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// Sign-carrying margin `|z| − √(ad)`; non-positive once the state is separable.
    pub fn entanglement_margin(&self) -> f64 {
        self.z.abs() - (self.a * self.d).max(0.0).sqrt()
    }
}

impl fmt::Display for XState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={:.12} b={:.12} c={:.12} d={:.12} z={:.12}",
            self.a, self.b, self.c, self.d, self.z
        )
    }
}

/// Concurrence of an X state, `2 max{0, |z| − √(ad)}`.
pub fn concurrence_x(x: &XState) -> f64 {
    2.0 * x.entanglement_margin().max(0.0)
}

/// True iff `|z| ≤ √(ad)`, i.e. the concurrence is exactly zero.
pub fn is_fully_disentangled(x: &XState) -> bool {
    x.entanglement_margin() <= 0.0
}

/// Named initial states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    BellPlus,
    BellMinus,
    /// `a = b = c = z = 1/3`, the zero-temperature worked example.
    Ye4Third,
    /// Mixture `p·|Ψ⁻⟩⟨Ψ⁻| + (1 − p)·I/4`.
    Werner(f64),
}

impl Preset {
    pub fn state(&self) -> Result<XState> {
        match *self {
            Preset::BellPlus => XState::new(0.0, 0.5, 0.5, 0.0, 0.5),
            Preset::BellMinus => XState::new(0.0, 0.5, 0.5, 0.0, -0.5),
            Preset::Ye4Third => {
                let third = 1.0 / 3.0;
                XState::new(third, third, third, 0.0, third)
            }
            Preset::Werner(p) => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Domain(format!(
                        "werner weight p = {p} outside [0, 1]"
                    )));
                }
                let mixed = (1.0 - p) / 4.0;
                let inner = (1.0 + p) / 4.0;
                XState::new(mixed, inner, inner, mixed, -p / 2.0)
            }
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    /// Accepts `bell-plus`, `bell-minus`, `ye4-third`, `werner(p)` and `werner:p`.
    fn from_str(s: &str) -> Result<Self> {
        let name = s.trim().to_ascii_lowercase();
        match name.as_str() {
            "bell-plus" => return Ok(Preset::BellPlus),
            "bell-minus" => return Ok(Preset::BellMinus),
            "ye4-third" => return Ok(Preset::Ye4Third),
            _ => {}
        }
        let weight = name
            .strip_prefix("werner(")
            .and_then(|rest| rest.strip_suffix(')'))
            .or_else(|| name.strip_prefix("werner:"))
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))?;
        let p: f64 = weight
            .trim()
            .parse()
            .map_err(|_| Error::UnknownPreset(s.to_string()))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!(
                "werner weight p = {p} outside [0, 1]"
            )));
        }
        Ok(Preset::Werner(p))
    }
}

/// Resolves a preset by name.
pub fn preset_state(name: &str) -> Result<XState> {
    name.parse::<Preset>()?.state()
}

/// Draws a valid X state: populations uniform on the simplex, `z` uniform on
/// `[−√(bc), √(bc)]`.
pub fn random_xstate<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let mut w = [0.0f64; 4];
    for v in w.iter_mut() {
        // 1 - u lies in (0, 1], so the log is finite.
        *v = -(1.0 - rng.random::<f64>()).ln();
    }
    let total: f64 = w.iter().sum();
    let [a, b, c, _] = w.map(|v| v / total);
    let d = 1.0 - a - b - c;
    let d = d.max(0.0);
    let z = (2.0 * rng.random::<f64>() - 1.0) * (b * c).sqrt();
    XState::from_parts(a, b, c, d, z)
}

/// Rejection-samples [`random_xstate`] until the state has positive concurrence.
pub fn random_entangled_xstate<R: Rng + ?Sized>(rng: &mut R) -> XState {
    loop {
        let x = random_xstate(rng);
        if concurrence_x(&x) > 1e-6 {
            return x;
        }
    }
}
