//! Seeded random draws of states, tangents and unitaries.
//!
//! All samplers take a caller-owned RNG so sweeps and scans stay
//! deterministic per seed.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::ComplexMatrix;
use crate::states::BlochVector;

/// The RNG used across the crate.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Orthonormalizes the given columns in place with modified Gram–Schmidt.
pub(crate) fn orthonormalize(columns: &mut [Vec<Complex64>]) {
    for k in 0..columns.len() {
        for j in 0..k {
            let (done, rest) = columns.split_at_mut(k);
            let proj: Complex64 = done[j].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in rest[0].iter_mut().zip(&done[j]) {
                *x -= proj * a;
            }
        }
        let norm = columns[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in columns[k].iter_mut() {
            *x /= norm;
        }
    }
}

/// `cols` orthonormal Gaussian columns of length `rows`, returned column-wise.
pub fn random_isometry_columns<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
) -> Vec<Vec<Complex64>> {
    let mut columns: Vec<Vec<Complex64>> =
        (0..cols).map(|_| (0..rows).map(|_| gaussian_complex(rng)).collect()).collect();
    orthonormalize(&mut columns);
    columns
}

/// Haar-random unitary of the given dimension.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let cols = random_isometry_columns(rng, dim, dim);
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian_complex(rng));
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Traceless Hermitian matrix with Gaussian entries.
pub fn random_traceless_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, dim);
    let shift = h.trace().re / dim as f64;
    &h - &ComplexMatrix::identity(dim).scale_real(shift)
}

/// Bloch vector with isotropic direction and radius uniform in `[0, max_radius]`.
pub fn random_bloch<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> BlochVector {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm < 1e-12 {
            continue;
        }
        let r = max_radius * rng.random::<f64>();
        return BlochVector::new(r * v[0] / norm, r * v[1] / norm, r * v[2] / norm)
            .expect("radius bounded by max_radius <= 1");
    }
}

/// Full-rank density matrix of dimension `dim` (Ginibre with a mixing floor).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian_complex(rng));
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    let mixed = ComplexMatrix::identity(dim).scale_real(0.05 / dim as f64);
    &gg.scale_real(0.95 / tr) + &mixed
}
