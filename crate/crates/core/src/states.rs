//! Qubit states: Bloch vectors, validated density matrices and mixedness.

use num_complex::Complex64;

use crate::matrix::{eigh, pauli_x, pauli_y, pauli_z, ComplexMatrix, HERMITIAN_TOL};
use crate::{Error, Result};

/// Slack on `|n| <= 1`, so numerically pure states from round trips validate.
pub const BLOCH_TOL: f64 = 1e-12;
/// Tolerance on `Tr rho = 1`.
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted for a density matrix.
pub const EIGENVALUE_FLOOR: f64 = -1e-12;

/// Bloch vector `(nx, ny, nz)` of a qubit, `|n| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub nx: f64,
    pub ny: f64,
    pub nz: f64,
}

impl BlochVector {
    pub fn new(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        let v = Self { nx, ny, nz };
        let norm = v.norm();
        if !norm.is_finite() || v.norm_sqr() > 1.0 + BLOCH_TOL {
            return Err(Error::OutsideBlochBall(norm));
        }
        Ok(v)
    }

    pub const fn origin() -> Self {
        Self { nx: 0.0, ny: 0.0, nz: 0.0 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.nx * self.nx + self.ny * self.ny + self.nz * self.nz
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn components(&self) -> [f64; 3] {
        [self.nx, self.ny, self.nz]
    }
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Projector onto a normalized pure state.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        validate_state(&ComplexMatrix::projector(amplitudes))
    }

    /// Wraps a matrix produced by a state-preserving map without re-validating.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self { mat: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64) }
    }
}

/// Validates Hermiticity, unit trace and positivity, in that order.
pub fn validate_state(m: &ComplexMatrix) -> Result<DensityMatrix> {
    let herm = m.hermiticity_error();
    if herm > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::InvalidTrace(tr.re));
    }
    let min = eigh(m)?.eigenvalues[0];
    if min < EIGENVALUE_FLOOR {
        return Err(Error::NegativeEigenvalue(min));
    }
    Ok(DensityMatrix { mat: m.clone() })
}

/// `rho = (I + n . sigma) / 2`.
pub fn bloch_to_density(n: &BlochVector) -> DensityMatrix {
    let half = |re: f64, im: f64| Complex64::new(0.5 * re, 0.5 * im);
    let mat = ComplexMatrix::from_rows(&[
        [half(1.0 + n.nz, 0.0), half(n.nx, -n.ny)],
        [half(n.nx, n.ny), half(1.0 - n.nz, 0.0)],
    ])
    .expect("finite Bloch components");
    DensityMatrix { mat }
}

/// `n_k = Tr(rho sigma_k)`.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, got: rho.dim() });
    }
    let expect = |p: ComplexMatrix| (rho.matrix() * &p).trace().re;
    BlochVector::new(expect(pauli_x()), expect(pauli_y()), expect(pauli_z()))
}

/// Eigenvalues `((1 + |n|)/2, (1 - |n|)/2)`, larger first.
pub fn qubit_spectrum(n: &BlochVector) -> (f64, f64) {
    let r = n.norm();
    (0.5 * (1.0 + r), 0.5 * (1.0 - r))
}

/// `1 - Tr(rho^2)`; for a qubit this is `(1 - |n|^2) / 2`.
pub fn mixedness(rho: &DensityMatrix) -> f64 {
    // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho
    1.0 - rho.matrix().as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>()
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    1.0 - mixedness(rho)
}
