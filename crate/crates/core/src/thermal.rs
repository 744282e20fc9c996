//! Identical, independent finite-temperature amplitude-damping baths and the
//! closed-form propagator for X states.

use crate::error::{Error, Result};
use crate::xstate::XState;

/// Parameters shared by the two local baths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    gamma_rate: f64,
    nbar: f64,
}

impl BathParams {
    /// `gamma_rate` is the damping rate Γ (> 0), `nbar` the mean thermal
    /// occupation n̄ (≥ 0).
    pub fn new(gamma_rate: f64, nbar: f64) -> Result<Self> {
        if !(gamma_rate.is_finite() && gamma_rate > 0.0) {
            return Err(Error::Domain(format!(
                "damping rate {gamma_rate} must be positive"
            )));
        }
        check_nbar(nbar)?;
        Ok(Self { gamma_rate, nbar })
    }

    pub fn gamma_rate(&self) -> f64 {
        self.gamma_rate
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    /// Γ(2n̄ + 1): relaxation rate of the populations and of `z`.
    pub fn total_rate(&self) -> f64 {
        self.gamma_rate * (2.0 * self.nbar + 1.0)
    }

    pub fn noise_factors(&self) -> NoiseFactors {
        NoiseFactors::from_valid_nbar(self.nbar)
    }
}

fn check_nbar(nbar: f64) -> Result<()> {
    if !(nbar.is_finite() && nbar >= 0.0) {
        return Err(Error::Domain(format!(
            "mean occupation {nbar} must be non-negative"
        )));
    }
    Ok(())
}

/// Thermal weights N₁ = (n̄+1)²/(2n̄+1)², N₂ = n̄²/(2n̄+1)², N₃ = n̄(n̄+1)/(2n̄+1)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseFactors {
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
}

impl NoiseFactors {
    fn from_valid_nbar(nbar: f64) -> Self {
        let denom = (2.0 * nbar + 1.0).powi(2);
        Self {
            n1: (nbar + 1.0).powi(2) / denom,
            n2: nbar * nbar / denom,
            n3: nbar * (nbar + 1.0) / denom,
        }
    }
}

pub fn noise_factors(nbar: f64) -> Result<NoiseFactors> {
    check_nbar(nbar)?;
    Ok(NoiseFactors::from_valid_nbar(nbar))
}

/// Amplitude survival γ(t) and its complement ω²(t) = 1 − γ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayPair {
    pub gamma: f64,
    pub omega_sq: f64,
}

impl DecayPair {
    pub fn gamma_sq(&self) -> f64 {
        self.gamma * self.gamma
    }
}

pub fn decay_pair(bath: &BathParams, t: f64) -> Result<DecayPair> {
    check_time(t)?;
    let exponent = bath.total_rate() * t;
    Ok(DecayPair {
        gamma: (-0.5 * exponent).exp(),
        // -expm1 keeps ω² accurate for small elapsed times.
        omega_sq: -(-exponent).exp_m1(),
    })
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!(
            "time {t} must be finite and non-negative"
        )));
    }
    Ok(())
}

/// Time at which ω²(t) reaches `omega_sq`; `None` when it never does (ω² ≥ 1).
pub fn time_for_omega_sq(bath: &BathParams, omega_sq: f64) -> Option<f64> {
    if omega_sq.is_nan() || omega_sq >= 1.0 {
        return None;
    }
    if omega_sq <= 0.0 {
        return Some(0.0);
    }
    Some(-(-omega_sq).ln_1p() / bath.total_rate())
}

/// Evolves an X state through time `t` with the closed-form thermal propagator.
pub fn evolve_xstate(x0: &XState, bath: &BathParams, t: f64) -> Result<XState> {
    let pair = decay_pair(bath, t)?;
    Ok(propagate(x0, &bath.noise_factors(), &pair))
}

/// Applies the propagator for a given decay pair.
pub fn propagate(x0: &XState, nf: &NoiseFactors, pair: &DecayPair) -> XState {
    let [a, b, c, d, z] = x0.to_array();
    let NoiseFactors { n1, n2, n3 } = *nf;
    let g2 = pair.gamma_sq();
    let g4 = g2 * g2;
    let w2 = pair.omega_sq;
    let w4 = w2 * w2;

    let at =
        n1 * g4 * a + n2 * (a + w2 * (b + c) + w4 * d) + n3 * (2.0 * g2 * a + g2 * w2 * (b + c));
    let bt = n1 * (g2 * b + g2 * w2 * a)
        + n2 * (g2 * b + g2 * w2 * d)
        + n3 * (b + g4 * b + w2 * (a + d) + w4 * c);
    let ct = n1 * (g2 * c + g2 * w2 * a)
        + n2 * (g2 * c + g2 * w2 * d)
        + n3 * (c + w2 * (d + a) + w4 * b + g4 * c);
    let dt =
        n1 * (d + w2 * (b + c) + w4 * a) + n2 * g4 * d + n3 * (2.0 * g2 * d + g2 * w2 * (b + c));
    XState::from_parts(at, bt, ct, dt, g2 * z)
}

/// The t → ∞ limit `(N₂, N₃, N₃, N₁, 0)`.
pub fn steady_state(nbar: f64) -> Result<XState> {
    let NoiseFactors { n1, n2, n3 } = noise_factors(nbar)?;
    Ok(XState::from_parts(n2, n3, n3, n1, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::preset_state;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn noise_factor_examples() {
        let f = noise_factors(0.0).unwrap();
        assert_eq!((f.n1, f.n2, f.n3), (1.0, 0.0, 0.0));
        let f = noise_factors(1.0).unwrap();
        assert!(close(f.n1, 4.0 / 9.0, 1e-16));
        assert!(close(f.n2, 1.0 / 9.0, 1e-16));
        assert!(close(f.n3, 2.0 / 9.0, 1e-16));
        let f = noise_factors(3.0).unwrap();
        assert!(close(f.n1, 16.0 / 49.0, 1e-16));
        assert!(close(f.n2, 9.0 / 49.0, 1e-16));
        assert!(close(f.n3, 12.0 / 49.0, 1e-16));
        assert!(close(f.n1 + f.n2 + 2.0 * f.n3, 1.0, 1e-15));
        assert!(matches!(noise_factors(-0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn bath_validation() {
        assert!(BathParams::new(0.0, 1.0).is_err());
        assert!(BathParams::new(-1.0, 1.0).is_err());
        assert!(BathParams::new(1.0, -1.0).is_err());
        assert!(BathParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn decay_pair_examples() {
        let bath = BathParams::new(1.0, 0.0).unwrap();
        let p = decay_pair(&bath, 0.0).unwrap();
        assert_eq!((p.gamma, p.omega_sq), (1.0, 0.0));
        let p = decay_pair(&bath, 4f64.ln()).unwrap();
        assert!(close(p.gamma, 0.5, 1e-15));
        assert!(close(p.omega_sq, 0.75, 1e-15));

        let bath = BathParams::new(0.2, 1.0).unwrap();
        let p = decay_pair(&bath, 2.0).unwrap();
        // exp(-0.6) and 1 - exp(-1.2) to 16 digits
        assert!(close(p.gamma, 0.548_811_636_094_026_4, 1e-15));
        assert!(close(p.omega_sq, 0.698_805_788_087_797_6, 1e-15));
        assert!(matches!(decay_pair(&bath, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_time_is_identity() {
        let bath = BathParams::new(1.3, 2.1).unwrap();
        for name in ["bell-plus", "ye4-third", "werner(0.4)"] {
            let x = preset_state(name).unwrap();
            let y = evolve_xstate(&x, &bath, 0.0).unwrap();
            assert!(x.max_abs_diff(&y) < 1e-15, "{name}");
        }
    }

    #[test]
    fn zero_temperature_third_state_matches_closed_form() {
        let bath = BathParams::new(1.0, 0.0).unwrap();
        let x0 = preset_state("ye4-third").unwrap();
        for &t in &[0.1, 0.5348, 1.0, 2.5] {
            let p = decay_pair(&bath, t).unwrap();
            let (g2, w2) = (p.gamma_sq(), p.omega_sq);
            let expected = [
                g2 * g2 / 3.0,
                (g2 + g2 * w2) / 3.0,
                (g2 + g2 * w2) / 3.0,
                (2.0 * w2 + w2 * w2) / 3.0,
                g2 / 3.0,
            ];
            let got = evolve_xstate(&x0, &bath, t).unwrap().to_array();
            for (g, e) in got.iter().zip(expected) {
                assert!(close(*g, e, 1e-15), "t={t}: {got:?} vs {expected:?}");
            }
        }
    }

    #[test]
    fn bell_state_matches_simplified_coefficients() {
        // Bell-state coefficients with b(t) = c(t) carrying the factor 1/2
        // needed for unit trace.
        let bath = BathParams::new(1.0, 1.0).unwrap();
        let NoiseFactors { n1, n2, n3 } = bath.noise_factors();
        let x0 = preset_state("bell-plus").unwrap();
        for &t in &[0.1, 0.5, 1.0] {
            let p = decay_pair(&bath, t).unwrap();
            let (g2, w2) = (p.gamma_sq(), p.omega_sq);
            let a = n2 * w2 + n3 * g2 * w2;
            let b = 0.5 * (n1 * g2 + n2 * g2 + n3 * (g2 * g2 + 1.0 + w2 * w2));
            let d = n1 * w2 + n3 * g2 * w2;
            let got = evolve_xstate(&x0, &bath, t).unwrap();
            let expected = XState::new(a, b, b, d, 0.5 * g2).unwrap();
            assert!(got.max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn steady_state_limit() {
        for &nbar in &[0.0, 0.1, 1.0, 7.5] {
            let bath = BathParams::new(1.0, nbar).unwrap();
            let t = 60.0 / bath.total_rate();
            let x = evolve_xstate(&preset_state("werner(0.9)").unwrap(), &bath, t).unwrap();
            assert!(x.max_abs_diff(&steady_state(nbar).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn omega_sq_time_inverse() {
        let bath = BathParams::new(0.7, 0.4).unwrap();
        for &t in &[0.0, 0.01, 0.3, 4.0] {
            let w2 = decay_pair(&bath, t).unwrap().omega_sq;
            let back = time_for_omega_sq(&bath, w2).unwrap();
            assert!(close(back, t, 1e-12 * (1.0 + t)));
        }
        assert_eq!(time_for_omega_sq(&bath, 1.0), None);
    }
}
