use num_complex::Complex64;

use super::{ComplexMatrix, HERMITIAN_TOL};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are ascending; column `k` of `eigenvectors` belongs to
/// `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V diag(lambda) V^*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)].conj()).sum()
        })
    }

    /// Max-abs deviation of `V^* V` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let v = &self.eigenvectors;
        (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(v.dim()))
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Dimension 2 uses the closed form; larger matrices go through cyclic complex
/// Jacobi rotations. Input that is not Hermitian within `1e-12` is rejected.
pub fn eigh(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let err = m.hermiticity_error();
    if err > HERMITIAN_TOL {
        return Err(Error::NotHermitian(err));
    }
    let (values, vectors) = match m.dim() {
        1 => (vec![m[(0, 0)].re], ComplexMatrix::identity(1)),
        2 => eigh_2x2(m),
        _ => jacobi(m)?,
    };
    Ok(sort_ascending(values, vectors))
}

/// Trace norm of a Hermitian matrix, the sum of absolute eigenvalues.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigh(m)?.eigenvalues.iter().map(|l| l.abs()).sum())
}

fn eigh_2x2(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(b.norm());
    let (lo, hi) = (mean - radius, mean + radius);

    if b.norm() == 0.0 {
        return (vec![a, d], ComplexMatrix::identity(2));
    }

    // Eigenvector of the larger eigenvalue, from whichever row of (H - hi) is
    // better conditioned; the other eigenvector is its orthogonal complement.
    let from_row0 = [b, Complex64::new(hi - a, 0.0)];
    let from_row1 = [Complex64::new(hi - d, 0.0), b.conj()];
    let norm0 = (from_row0[0].norm_sqr() + from_row0[1].norm_sqr()).sqrt();
    let norm1 = (from_row1[0].norm_sqr() + from_row1[1].norm_sqr()).sqrt();
    let (u, norm) = if norm0 >= norm1 { (from_row0, norm0) } else { (from_row1, norm1) };
    let u = [u[0] / norm, u[1] / norm];
    let w = [-u[1].conj(), u[0].conj()];

    let vectors = ComplexMatrix::from_fn(2, |i, k| if k == 0 { w[i] } else { u[i] });
    (vec![lo, hi], vectors)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();
    if scale == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let threshold = OFF_DIAGONAL_TOL * scale;

    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    Ok(((0..n).map(|i| a[(i, i)].re).collect(), v))
}

/// One complex Givens rotation `a <- G^* a G`, `v <- v G`, zeroing `a[p][q]`.
///
/// `G = P R` where `P` removes the phase of `a[p][q]` and `R` is the real
/// symmetric Jacobi rotation of the resulting 2x2 block.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    // Columns: a G and v G.
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c + akq * g_qp;
        a[(k, q)] = akp * s + akq * g_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * c + vkq * g_qp;
        v[(k, q)] = vkp * s + vkq * g_qq;
    }
    // Rows: G^* (a G).
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c + aqk * g_qp.conj();
        a[(q, k)] = apk * s + aqk * g_qq.conj();
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

fn sort_ascending(values: Vec<f64>, vectors: ComplexMatrix) -> EigenDecomposition {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let eigenvalues = order.iter().map(|&k| values[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, k| vectors[(i, order[k])]);
    EigenDecomposition { eigenvalues, eigenvectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{pauli_x, pauli_y, pauli_z, tensor};

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn diagonal_input() {
        let e = eigh(&ComplexMatrix::diag(&[0.75, 0.25])).unwrap();
        assert_eq!(e.eigenvalues, vec![0.25, 0.75]);
        for i in 0..2 {
            for k in 0..2 {
                let expected = if (i, k) == (1, 0) || (i, k) == (0, 1) { 1.0 } else { 0.0 };
                assert!((e.eigenvectors[(i, k)].norm() - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn pauli_x_eigenvectors() {
        let e = eigh(&pauli_x()).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
        // columns proportional to (1, -1)/sqrt2 and (1, 1)/sqrt2 up to phase
        let v = &e.eigenvectors;
        let minus = (v[(0, 0)] - v[(1, 0)]).norm() * FRAC_1_SQRT_2;
        let plus = (v[(0, 1)] + v[(1, 1)]).norm() * FRAC_1_SQRT_2;
        assert!((minus - 1.0).abs() < 1e-14);
        assert!((plus - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pure_qubit_spectrum() {
        // bloch (0.6, 0, 0.8): 1/2 [[1.8, 0.6], [0.6, 0.2]]
        let rho = ComplexMatrix::from_real_rows(&[[0.9, 0.3], [0.3, 0.1]]).unwrap();
        let e = eigh(&rho).unwrap();
        assert!(e.eigenvalues[0].abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_on_four_by_four() {
        let h = &tensor(&pauli_x(), &pauli_y()) + &tensor(&pauli_z(), &ComplexMatrix::diag(&[0.5, -2.0]));
        let e = eigh(&h).unwrap();
        assert!(e.reconstruct().max_abs_diff(&h) < 1e-13);
        assert!(e.orthonormality_error() < 1e-14);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(eigh(&m), Err(Error::NotHermitian(_))));
        assert!(matches!(trace_norm(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn trace_norm_examples() {
        assert!((trace_norm(&pauli_z()).unwrap() - 2.0).abs() < 1e-15);
        let rho = ComplexMatrix::from_real_rows(&[[0.9, 0.3], [0.3, 0.1]]).unwrap();
        assert!((trace_norm(&rho).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let e = eigh(&ComplexMatrix::zeros(4)).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 4]);
        assert_eq!(e.eigenvectors, ComplexMatrix::identity(4));
    }
}
