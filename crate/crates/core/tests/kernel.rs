mod common;

use proptest::prelude::*;
use qgeo::matrix::{
    adjoint, commutator, eigh, hs_inner, partial_transpose_first, pauli_x, pauli_z, tensor, trace_norm,
};
use qgeo::sampling::{gaussian_complex, random_bloch, random_hermitian, random_unitary, seeded};
use qgeo::states::{
    bloch_to_density, density_to_bloch, mixedness, qubit_spectrum, validate_state, BlochVector,
};
use qgeo::{Complex64, ComplexMatrix};

fn hermitian(seed: u64, dim: usize) -> ComplexMatrix {
    random_hermitian(&mut seeded(seed), dim)
}

#[test]
fn eigh_matches_nalgebra_spectrum() {
    let mut rng = seeded(17);
    for dim in [2, 3, 4] {
        for _ in 0..200 {
            let h = random_hermitian(&mut rng, dim);
            let ours = eigh(&h).unwrap().eigenvalues;
            let oracle = common::eigenvalues(&h);
            for (a, b) in ours.iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-12, "{ours:?} vs {oracle:?}");
            }
        }
    }
}

#[test]
fn bell_partial_transpose_spectrum() {
    let mut bell = ComplexMatrix::zeros(4);
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        bell[(i, j)] = Complex64::new(0.5, 0.0);
    }
    let pt = partial_transpose_first(&bell).unwrap();
    assert_eq!(pt, common::partial_transpose(&bell));
    let spectrum = eigh(&pt).unwrap().eigenvalues;
    let expected = [-0.5, 0.5, 0.5, 0.5];
    for (a, b) in spectrum.iter().zip(expected) {
        assert!((a - b).abs() < 1e-15);
    }
    assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-14);
}

#[test]
fn hs_inner_unitary_invariance() {
    let mut rng = seeded(23);
    for dim in [2, 4] {
        for _ in 0..100 {
            let x = random_hermitian(&mut rng, dim);
            let y = random_hermitian(&mut rng, dim);
            let u = random_unitary(&mut rng, dim);
            let before = hs_inner(&x, &y).unwrap();
            let after = hs_inner(&x.conjugate_by(&u).unwrap(), &y.conjugate_by(&u).unwrap()).unwrap();
            assert!((before - after).norm() < 1e-10);
        }
    }
}

#[test]
fn unit_trace_states_have_unit_trace_norm() {
    let mut rng = seeded(29);
    for _ in 0..100 {
        let rho = bloch_to_density(&random_bloch(&mut rng, 1.0));
        assert!((trace_norm(rho.matrix()).unwrap() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn qubit_spectrum_matches_eigh() {
    let mut rng = seeded(31);
    for _ in 0..1000 {
        let n = random_bloch(&mut rng, 1.0);
        let (hi, lo) = qubit_spectrum(&n);
        let e = eigh(bloch_to_density(&n).matrix()).unwrap().eigenvalues;
        assert!((e[0] - lo).abs() < 1e-12 && (e[1] - hi).abs() < 1e-12);
    }
}

#[test]
fn bloch_round_trip() {
    let mut rng = seeded(37);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = random_bloch(&mut rng, 1.0);
        let back = density_to_bloch(&bloch_to_density(&n)).unwrap();
        for (a, b) in n.components().iter().zip(back.components()) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst < 1e-12);
}

#[test]
fn sigma_commutator_identity() {
    let lhs = commutator(&pauli_x(), &pauli_z()).unwrap();
    let rhs = commutator(&pauli_z(), &pauli_x()).unwrap();
    assert_eq!(lhs, -&rhs);
    assert_eq!(adjoint(&tensor(&pauli_x(), &pauli_z())), tensor(&pauli_x(), &pauli_z()));
}

fn general(seed: u64) -> ComplexMatrix {
    let mut rng = seeded(seed);
    ComplexMatrix::from_vec(4, (0..16).map(|_| gaussian_complex(&mut rng)).collect()).unwrap()
}

fn bloch_strategy() -> impl Strategy<Value = BlochVector> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_filter_map("inside ball", |(x, y, z)| {
        BlochVector::new(x, y, z).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eigh_reconstructs(seed in any::<u64>(), dim in prop::sample::select(vec![2usize, 3, 4])) {
        let h = hermitian(seed, dim);
        let e = eigh(&h).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&h) < 1e-10);
        prop_assert!(e.orthonormality_error() < 1e-12);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn hs_inner_is_positive_definite(seed in any::<u64>()) {
        let x = hermitian(seed, 4);
        let norm = hs_inner(&x, &x).unwrap();
        prop_assert!(norm.re > 0.0 && norm.im.abs() < 1e-12);
        prop_assert_eq!(hs_inner(&ComplexMatrix::zeros(4), &ComplexMatrix::zeros(4)).unwrap().re, 0.0);
    }

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>()) {
        let m = general(seed);
        let twice = partial_transpose_first(&partial_transpose_first(&m).unwrap()).unwrap();
        prop_assert_eq!(twice, m);
    }

    #[test]
    fn trace_norm_bounds_trace(seed in any::<u64>(), dim in prop::sample::select(vec![2usize, 4])) {
        let h = hermitian(seed, dim);
        prop_assert!(trace_norm(&h).unwrap() >= h.trace().re.abs() - 1e-12);
    }

    #[test]
    fn commutator_is_antisymmetric(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (hermitian(a, 4), hermitian(b, 4));
        prop_assert_eq!(commutator(&x, &y).unwrap(), -&commutator(&y, &x).unwrap());
    }

    #[test]
    fn mixedness_closed_form(n in bloch_strategy()) {
        let m = mixedness(&bloch_to_density(&n));
        prop_assert!((m - 0.5 * (1.0 - n.norm_sqr())).abs() < 1e-12);
        prop_assert!(validate_state(bloch_to_density(&n).matrix()).is_ok());
    }

    #[test]
    fn mixedness_is_unitarily_invariant(n in bloch_strategy(), seed in any::<u64>()) {
        let rho = bloch_to_density(&n);
        let u = random_unitary(&mut seeded(seed), 2);
        let rotated = validate_state(&rho.matrix().conjugate_by(&u).unwrap()).unwrap();
        prop_assert!((mixedness(&rho) - mixedness(&rotated)).abs() < 1e-12);
    }
}
