//! General two-qubit concurrence.
//!
//! With `ρ = W W†` (columns of `W` are eigenvectors scaled by √λ), the
//! square roots of the eigenvalues of `R = ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` are the
//! singular values of the complex-symmetric matrix `τ = Wᵀ (σ_y⊗σ_y) W`.
//! Taking singular values of `τ` avoids the square root of near-zero
//! eigenvalues of `R`, which otherwise costs half the working precision on
//! rank-deficient states.

use num_complex::Complex64;

use super::density::{DensityMatrix4, Operator4};
use crate::error::{Error, Result};

/// `σ_y ⊗ σ_y`.
pub fn spin_flip() -> Operator4 {
    let mut y = Operator4::zeros();
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y
}

/// `max{0, λ₁ − λ₂ − λ₃ − λ₄}` with `λᵢ` in decreasing order.
pub fn wootters_concurrence(rho: &DensityMatrix4) -> Result<f64> {
    let eigen = rho.matrix().symmetric_eigen();
    let mut w = eigen.eigenvectors;
    for (k, &lambda) in eigen.eigenvalues.iter().enumerate() {
        if !lambda.is_finite() {
            return Err(Error::Numeric(format!("eigenvalue {lambda} of rho")));
        }
        // tiny negative eigenvalues are rounding noise
        w.column_mut(k).scale_mut(lambda.max(0.0).sqrt());
    }
    let tau = w.transpose() * spin_flip() * w;
    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    if lambdas.iter().any(|l| !l.is_finite()) {
        return Err(Error::Numeric("singular value decomposition failed".into()));
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::embed_xstate;
    use crate::xstate::{concurrence_x, preset_state, XState};

    #[test]
    fn bell_is_maximally_entangled() {
        for name in ["bell-plus", "bell-minus"] {
            let c = wootters_concurrence(&embed_xstate(&preset_state(name).unwrap())).unwrap();
            assert!((c - 1.0).abs() < 1e-12, "{name}: {c}");
        }
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let mixed = XState::new(0.25, 0.25, 0.25, 0.25, 0.0).unwrap();
        assert_eq!(wootters_concurrence(&embed_xstate(&mixed)).unwrap(), 0.0);
    }

    #[test]
    fn werner_point_eight() {
        let x = preset_state("werner(0.8)").unwrap();
        let general = wootters_concurrence(&embed_xstate(&x)).unwrap();
        assert!((general - 0.7).abs() < 1e-12);
        assert!((concurrence_x(&x) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn non_x_pure_state() {
        // cos θ |++⟩ + sin θ |−−⟩ has concurrence |sin 2θ|.
        let theta: f64 = 0.3;
        let psi = [theta.cos(), 0.0, 0.0, theta.sin()];
        let m = Operator4::from_fn(|i, j| Complex64::new(psi[i] * psi[j], 0.0));
        let rho = DensityMatrix4::new(m).unwrap();
        let c = wootters_concurrence(&rho).unwrap();
        assert!((c - (2.0 * theta).sin()).abs() < 1e-12);
    }

    #[test]
    fn product_of_local_phases_stays_separable() {
        // |+⟩ ⊗ (|+⟩ + i|−⟩)/√2
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [
            Complex64::new(s, 0.0),
            Complex64::new(0.0, s),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let m = Operator4::from_fn(|i, j| psi[i] * psi[j].conj());
        let c = wootters_concurrence(&DensityMatrix4::new(m).unwrap()).unwrap();
        assert!(c < 1e-12);
    }
}
