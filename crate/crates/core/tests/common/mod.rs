//! Independent oracles built on nalgebra. Nothing here calls the crate's own
//! eigensolver, partial transpose or metric code.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use qgeo::Complex64;
use qgeo::ComplexMatrix;

pub fn to_na(m: &ComplexMatrix) -> DMatrix<Complex64> {
    let n = m.dim();
    DMatrix::from_fn(n, n, |i, j| m[(i, j)])
}

pub fn from_na(m: &DMatrix<Complex64>) -> ComplexMatrix {
    let n = m.nrows();
    let data = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m[(i, j)]).collect();
    ComplexMatrix::from_vec(n, data).unwrap()
}

/// Ascending eigenvalues from nalgebra's Hermitian solver.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(to_na(m)).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Partial transpose on the first qubit written block-wise: block (a, b) of
/// the result is block (b, a) of the input.
pub fn partial_transpose(m: &ComplexMatrix) -> ComplexMatrix {
    let src = to_na(m);
    let mut out = DMatrix::<Complex64>::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            let block = src.view((2 * b, 2 * a), (2, 2)).into_owned();
            out.view_mut((2 * a, 2 * b), (2, 2)).copy_from(&block);
        }
    }
    from_na(&out)
}

/// Sum of the absolute values of the negative eigenvalues of the partial transpose.
pub fn negativity(joint: &ComplexMatrix) -> f64 {
    eigenvalues(&partial_transpose(joint)).iter().filter(|l| **l < 0.0).map(|l| -l).sum()
}

fn sqrtm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(m.clone());
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Wigner–Yanase metric via the Sylvester equation `√ρ X + X √ρ = A`,
/// `K = 4 Tr(X^* X)`.
pub fn wy_metric(rho: &ComplexMatrix, a: &ComplexMatrix) -> f64 {
    let n = rho.dim();
    let s = sqrtm(&to_na(rho));
    let id = DMatrix::<Complex64>::identity(n, n);
    // column-major vec: vec(SX) = (I ⊗ S) vec X, vec(XS) = (Sᵀ ⊗ I) vec X
    let op = id.kronecker(&s) + s.transpose().kronecker(&id);
    let rhs = DMatrix::from_column_slice(n * n, 1, to_na(a).as_slice());
    let x = op.lu().solve(&rhs).expect("Sylvester operator invertible");
    4.0 * x.iter().map(|z| z.norm_sqr()).sum::<f64>()
}
