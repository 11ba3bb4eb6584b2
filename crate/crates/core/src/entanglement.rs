//! Entanglement generation between a system qubit and an ancilla, and its
//! measurement by negativity.
//!
//! Two-qubit operators use the basis `|00>, |01>, |10>, |11>` with the system
//! qubit first.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::matrix::{partial_transpose_first, pauli_x, pauli_y, pauli_z, tensor, trace_norm, ComplexMatrix};
use crate::states::{BlochVector, DensityMatrix};
use crate::{Error, Result};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// One of the three Pauli directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn pauli(self) -> ComplexMatrix {
        match self {
            PauliAxis::X => pauli_x(),
            PauliAxis::Y => pauli_y(),
            PauliAxis::Z => pauli_z(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PauliAxis::X => "x",
            PauliAxis::Y => "y",
            PauliAxis::Z => "z",
        }
    }

    /// Component of `n` along this axis.
    pub fn component(self, n: &BlochVector) -> f64 {
        match self {
            PauliAxis::X => n.nx,
            PauliAxis::Y => n.ny,
            PauliAxis::Z => n.nz,
        }
    }

    /// Squared length of the part of `n` orthogonal to this axis, summed
    /// from the other two components.
    pub fn perpendicular_sqr(self, n: &BlochVector) -> f64 {
        match self {
            PauliAxis::X => n.ny * n.ny + n.nz * n.nz,
            PauliAxis::Y => n.nx * n.nx + n.nz * n.nz,
            PauliAxis::Z => n.nx * n.nx + n.ny * n.ny,
        }
    }

    /// Exchanges the component along this axis with the z component.
    ///
    /// Maps a z-oriented configuration onto the equivalent one for this axis;
    /// it is an involution and the identity for `Z`.
    pub fn exchange_with_z(self, n: &BlochVector) -> BlochVector {
        let [x, y, z] = n.components();
        let (nx, ny, nz) = match self {
            PauliAxis::X => (z, y, x),
            PauliAxis::Y => (x, z, y),
            PauliAxis::Z => (x, y, z),
        };
        BlochVector { nx, ny, nz }
    }

    /// Unitary whose columns are the `+1` and `-1` eigenvectors of this Pauli
    /// matrix, so it maps `|0>, |1>` onto the axis eigenbasis.
    pub fn basis_change(self) -> ComplexMatrix {
        let h = FRAC_1_SQRT_2;
        let rows = match self {
            PauliAxis::Z => return ComplexMatrix::identity(2),
            PauliAxis::X => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
            PauliAxis::Y => [[c(h, 0.0), c(h, 0.0)], [c(0.0, h), c(0.0, -h)]],
        };
        ComplexMatrix::from_rows(&rows).expect("2x2 basis change")
    }

    /// The `+1` eigenstate of this Pauli matrix.
    pub fn plus_state(self) -> [Complex64; 2] {
        let b = self.basis_change();
        [b[(0, 0)], b[(1, 0)]]
    }

    /// The `-1` eigenstate of this Pauli matrix.
    pub fn minus_state(self) -> [Complex64; 2] {
        let b = self.basis_change();
        [b[(0, 1)], b[(1, 1)]]
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PauliAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "x" | "X" => Ok(PauliAxis::X),
            "y" | "Y" => Ok(PauliAxis::Y),
            "z" | "Z" => Ok(PauliAxis::Z),
            other => Err(format!("unknown axis '{other}', expected x, y or z")),
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A 4x4 unitary that copies the system's `axis` eigenbasis label onto the
/// ancilla.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglingUnitary {
    mat: ComplexMatrix,
    basis_axis: PauliAxis,
}

impl EntanglingUnitary {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn basis_axis(&self) -> PauliAxis {
        self.basis_axis
    }

    pub fn unitarity_error(&self) -> f64 {
        (&self.mat.adjoint() * &self.mat).max_abs_diff(&ComplexMatrix::identity(4))
    }
}

/// Controlled-NOT on the computational basis: swaps `|10>` and `|11>`.
fn cnot() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for (row, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(row, col)] = c(1.0, 0.0);
    }
    m
}

/// The controlled-NOT written in the eigenbasis of `axis`.
///
/// For `Z` this is the plain CNOT with the system as control, so
/// `|00> -> |00>` and `|10> -> |11>`. Other axes conjugate it by `B ⊗ B`, where
/// `B` is [`PauliAxis::basis_change`]; for `X`, `|++> -> |++>` and
/// `|-+> -> |-->`.
pub fn cnot_in_basis(axis: PauliAxis) -> EntanglingUnitary {
    let mat = match axis {
        PauliAxis::Z => cnot(),
        _ => {
            let b = axis.basis_change();
            let bb = tensor(&b, &b);
            cnot().conjugate_by(&bb).expect("4x4 conjugation")
        }
    };
    EntanglingUnitary { mat, basis_axis: axis }
}

/// The ancilla matched to `axis`: its `+1` eigenstate (`|0>` for `Z`).
pub fn ancilla_for(axis: PauliAxis) -> DensityMatrix {
    DensityMatrix::pure(&axis.plus_state()).expect("normalized eigenstate")
}

/// `U (ρ ⊗ τ) U^*`.
pub fn generate_joint_state(
    rho: &DensityMatrix,
    ancilla: &DensityMatrix,
    unitary: &EntanglingUnitary,
) -> Result<DensityMatrix> {
    for dim in [rho.dim(), ancilla.dim()] {
        if dim != 2 {
            return Err(Error::WrongDimension { expected: 2, got: dim });
        }
    }
    let product = tensor(rho.matrix(), ancilla.matrix());
    Ok(DensityMatrix::from_trusted(product.conjugate_by(unitary.matrix())?))
}

/// Negativity `(‖ρ^{T_S}‖₁ - 1) / 2` of a two-qubit state, clamped at zero.
pub fn negativity(joint: &DensityMatrix) -> Result<f64> {
    if joint.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, got: joint.dim() });
    }
    let pt = partial_transpose_first(joint.matrix())?;
    Ok(((trace_norm(&pt)? - 1.0) / 2.0).max(0.0))
}

/// Negativity of the z-pipeline joint state in closed form, `√(nx² + ny²) / 2`.
///
/// The mixedness-dependent prefactors of the unsimplified expression cancel,
/// and the result is zero at the centre of the ball.
pub fn negativity_closed_form(n: &BlochVector) -> f64 {
    negativity_closed_form_axis(n, PauliAxis::Z)
}

/// Closed-form negativity of the `axis` pipeline, half the length of the
/// component of `n` orthogonal to `axis`.
pub fn negativity_closed_form_axis(n: &BlochVector, axis: PauliAxis) -> f64 {
    0.5 * axis.perpendicular_sqr(n).sqrt()
}
