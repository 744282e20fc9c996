use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::xstate::XState;

/// A general 4×4 complex operator in the |++⟩, |+−⟩, |−+⟩, |−−⟩ basis.
pub type Operator4 = Matrix4<Complex64>;

/// Entries outside the X pattern must stay below this magnitude.
pub const X_PATTERN_TOL: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGEN_TOL: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(Operator4);

impl DensityMatrix4 {
    pub fn new(m: Operator4) -> Result<Self> {
        let herm = hermiticity_defect(&m);
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (defect {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {tr} differs from 1"
            )));
        }
        let rho = Self(m);
        let min = rho.min_eigenvalue();
        if min < -EIGEN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(rho)
    }

    /// Wraps a matrix whose invariants have been checked by the caller
    /// at an operation-specific tolerance.
    pub(crate) fn from_trusted(m: Operator4) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Operator4 {
        &self.0
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = self.0.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// `max |ρ_ij − ρ_ji*|`.
    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.0)
    }

    /// Largest magnitude among entries outside the X pattern.
    pub fn off_pattern_magnitude(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if !in_x_pattern(i, j) {
                    worst = worst.max(self.0[(i, j)].norm());
                }
            }
        }
        worst
    }
}

pub(crate) fn hermiticity_defect(m: &Operator4) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in i..4 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn in_x_pattern(i: usize, j: usize) -> bool {
    i == j || (i, j) == (1, 2) || (i, j) == (2, 1)
}

/// Places `(a, b, c, d)` on the diagonal and `z` on the |+−⟩/|−+⟩ coherence.
pub fn embed_xstate(x: &XState) -> DensityMatrix4 {
    let mut m = Operator4::zeros();
    m[(0, 0)] = Complex64::new(x.a(), 0.0);
    m[(1, 1)] = Complex64::new(x.b(), 0.0);
    m[(2, 2)] = Complex64::new(x.c(), 0.0);
    m[(3, 3)] = Complex64::new(x.d(), 0.0);
    m[(1, 2)] = Complex64::new(x.z(), 0.0);
    m[(2, 1)] = Complex64::new(x.z(), 0.0);
    DensityMatrix4(m)
}

/// Reads the five X parameters back. Fails if the matrix has weight outside
/// the X pattern or a complex coherence.
pub fn extract_xstate(rho: &DensityMatrix4) -> Result<XState> {
    let off = rho.off_pattern_magnitude();
    if off >= X_PATTERN_TOL {
        return Err(Error::Structure(format!(
            "off-pattern entry of magnitude {off:e}"
        )));
    }
    let m = rho.matrix();
    let coherence = m[(1, 2)];
    if coherence.im.abs() >= X_PATTERN_TOL {
        return Err(Error::Structure(format!(
            "coherence has imaginary part {:e}",
            coherence.im
        )));
    }
    let z = 0.5 * (coherence.re + m[(2, 1)].re);
    XState::new(m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re, z)
}
