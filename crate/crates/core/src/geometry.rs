//! Monotone Riemannian metrics on the state space.
//!
//! A metric is specified by a Morozova–Čencov function `c(λ, μ)` and its
//! constant `C`. For a state `ρ = Σ λ_i E_ii` that is diagonal in the matrix
//! units, the metric on a self-adjoint tangent `A` is
//!
//! ```text
//! K_ρ(A, A) = C Σ_i λ_i⁻¹ A_ii² + 2 Σ_{i<j} |A_ij|² c(λ_i, λ_j)
//! ```
//!
//! General states are handled by moving `A` into the eigenbasis of `ρ`; the
//! metric is unitarily covariant, so this is the only consistent extension.

use num_complex::Complex64;
use rand::Rng;

use crate::entanglement::PauliAxis;
use crate::matrix::{commutator, eigh, ComplexMatrix, HERMITIAN_TOL};
use crate::sampling;
use crate::states::{BlochVector, DensityMatrix};
use crate::{Error, Result};

/// Eigenvalues of `ρ` at or below this are treated as the boundary, where the
/// metric diverges.
pub const POSITIVITY_FLOOR: f64 = 1e-10;
/// Tolerance on `Tr A = 0` for tangent vectors.
pub const TRACELESS_TOL: f64 = 1e-12;

/// A traceless Hermitian matrix: a tangent vector to the state space.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    mat: ComplexMatrix,
}

impl TangentVector {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let herm = mat.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = mat.trace().norm();
        if tr > TRACELESS_TOL {
            return Err(Error::NotTraceless(tr));
        }
        Ok(Self { mat })
    }

    /// Projects a Hermitian matrix onto its traceless part and returns the
    /// magnitude of the removed trace.
    pub fn traceless_part(mat: &ComplexMatrix) -> Result<(Self, f64)> {
        let herm = mat.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = mat.trace().re;
        let shift = tr / mat.dim() as f64;
        let projected = mat - &ComplexMatrix::identity(mat.dim()).scale_real(shift);
        Ok((Self { mat: projected }, tr.abs()))
    }

    pub fn zero(dim: usize) -> Self {
        Self { mat: ComplexMatrix::zeros(dim) }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { mat: self.mat.scale_real(s) }
    }

    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Ok(Self { mat: self.mat.conjugate_by(u)? })
    }
}

/// `i[ρ, K]` for a Hermitian observable `K`.
pub fn tangent_from_observable(rho: &DensityMatrix, observable: &ComplexMatrix) -> Result<TangentVector> {
    if rho.dim() != observable.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), observable.dim()));
    }
    let herm = observable.hermiticity_error();
    if herm > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let comm = commutator(rho.matrix(), observable)?;
    TangentVector::new(comm.scale(Complex64::new(0.0, 1.0)))
}

/// A Morozova–Čencov function `c(λ, μ)` with constant `C`.
#[derive(Clone, Copy)]
pub struct MCFunction {
    pub name: &'static str,
    pub constant: f64,
    eval: fn(f64, f64) -> f64,
    /// True for instances shipped only to exercise the registry.
    pub extension: bool,
}

impl std::fmt::Debug for MCFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MCFunction")
            .field("name", &self.name)
            .field("constant", &self.constant)
            .field("extension", &self.extension)
            .finish()
    }
}

impl MCFunction {
    /// A user-supplied function; used mostly to test the property checker.
    pub fn custom(name: &'static str, constant: f64, eval: fn(f64, f64) -> f64) -> Self {
        Self { name, constant, eval, extension: false }
    }

    pub fn eval(&self, lambda: f64, mu: f64) -> f64 {
        (self.eval)(lambda, mu)
    }
}

fn wigner_yanase(lambda: f64, mu: f64) -> f64 {
    let s = 2.0 / (lambda.sqrt() + mu.sqrt());
    s * s
}

fn bures(lambda: f64, mu: f64) -> f64 {
    2.0 / (lambda + mu)
}

fn kubo_mori(lambda: f64, mu: f64) -> f64 {
    if lambda == mu {
        return 1.0 / lambda;
    }
    // (ln λ - ln μ) / (λ - μ) written as ln(1 + x) / (μ x), x = λ/μ - 1
    let x = (lambda - mu) / mu;
    x.ln_1p() / (lambda - mu)
}

/// Wigner–Yanase function `c(λ, μ) = (2 / (√λ + √μ))²`, with `C = 1`.
pub fn mc_wigner_yanase() -> MCFunction {
    MCFunction { name: "wigner_yanase", constant: 1.0, eval: wigner_yanase, extension: false }
}

/// Bures (SLD) function `2 / (λ + μ)`.
pub fn mc_bures() -> MCFunction {
    MCFunction { name: "bures", constant: 1.0, eval: bures, extension: true }
}

/// Kubo–Mori function `(ln λ - ln μ) / (λ - μ)`.
pub fn mc_kubo_mori() -> MCFunction {
    MCFunction { name: "kubo_mori", constant: 1.0, eval: kubo_mori, extension: true }
}

/// All built-in functions, Wigner–Yanase first.
pub fn registry() -> [MCFunction; 3] {
    [mc_wigner_yanase(), mc_bures(), mc_kubo_mori()]
}

pub fn lookup(name: &str) -> Option<MCFunction> {
    registry().into_iter().find(|f| f.name == name)
}

/// Evaluates `K_ρ(A, A)` for the metric generated by `c`.
///
/// `ρ` must be strictly positive: its smallest eigenvalue has to exceed
/// [`POSITIVITY_FLOOR`].
pub fn metric_eval(rho: &DensityMatrix, tangent: &TangentVector, c: &MCFunction) -> Result<f64> {
    if rho.dim() != tangent.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), tangent.dim()));
    }
    let eig = eigh(rho.matrix())?;
    let lambda = &eig.eigenvalues;
    if lambda[0] <= POSITIVITY_FLOOR {
        return Err(Error::BoundaryState(lambda[0]));
    }
    let v = &eig.eigenvectors;
    let a = &(&v.adjoint() * tangent.matrix()) * v;

    let n = rho.dim();
    let mut diagonal = 0.0;
    for i in 0..n {
        let aii = a[(i, i)].re;
        diagonal += aii * aii / lambda[i];
    }
    let mut off = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let (li, lj) = (lambda[i], lambda[j]);
            let weight = if (li - lj).abs() <= 1e-14 * li.max(lj) {
                c.constant / (0.5 * (li + lj))
            } else {
                c.eval(li, lj)
            };
            off += a[(i, j)].norm_sqr() * weight;
        }
    }
    Ok(c.constant * diagonal + 2.0 * off)
}

/// Closed-form Wigner–Yanase metric of `i[ρ, σ_axis]` for the qubit with
/// Bloch vector `n`.
///
/// The tangent is `(n × e_axis)·σ`, which is orthogonal to `n` and therefore
/// purely off-diagonal in the eigenbasis of `ρ`. With eigenvalues
/// `(1 ± |n|)/2` this gives
///
/// ```text
/// K = 8 |n⊥|² / (1 + √(1 - |n|²)) = 8 |n⊥|² (1 - √(1 - |n|²)) / |n|²
/// ```
///
/// where `|n⊥|²` is the squared component of `n` orthogonal to the axis. The
/// first form has no `0/0` at the centre of the ball.
pub fn metric_wy_qubit(n: &BlochVector, axis: PauliAxis) -> Result<f64> {
    let r2 = n.norm_sqr();
    if r2 >= 1.0 {
        return Err(Error::BoundaryState(0.5 * (1.0 - n.norm())));
    }
    Ok(8.0 * axis.perpendicular_sqr(n) / (1.0 + (1.0 - r2).sqrt()))
}

/// The qubit metric with the literal constant `32 |n⊥|² (1 - √(1 - |n|²))`.
///
/// Only used to report how far that expression is from [`metric_wy_qubit`];
/// the two differ by the factor `4 |n|²`.
pub fn metric_wy_qubit_printed(n: &BlochVector, axis: PauliAxis) -> f64 {
    32.0 * axis.perpendicular_sqr(n) * (1.0 - (1.0 - n.norm_sqr()).sqrt())
}

/// Largest relative violations of the Morozova–Čencov properties found on
/// random positive pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub function: &'static str,
    pub extension: bool,
    pub samples: usize,
    /// `|c(λ,μ) - c(μ,λ)| / |c(λ,μ)|`
    pub symmetry: f64,
    /// `|c(λ,λ) - C/λ| / (C/λ)`
    pub diagonal_law: f64,
    /// `|c(tλ,tμ) - c(λ,μ)/t| / |c(λ,μ)/t|`
    pub homogeneity: f64,
}

impl PropertyReport {
    pub fn max_violation(&self) -> f64 {
        self.symmetry.max(self.diagonal_law).max(self.homogeneity)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_violation() <= tol
    }
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Checks symmetry, the diagonal law and degree -1 homogeneity of `c` on
/// `samples` log-uniform pairs in `[1e-3, 1]` with `t` in `[1e-2, 1e2]`.
pub fn check_mc_properties(c: &MCFunction, samples: usize) -> PropertyReport {
    let mut rng = sampling::seeded(0x4d43);
    let mut log_uniform = |lo: f64, hi: f64| (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp();

    let mut report = PropertyReport {
        function: c.name,
        extension: c.extension,
        samples,
        symmetry: 0.0,
        diagonal_law: 0.0,
        homogeneity: 0.0,
    };
    for _ in 0..samples {
        let lambda = log_uniform(1e-3, 1.0);
        let mu = log_uniform(1e-3, 1.0);
        let t = log_uniform(1e-2, 1e2);
        let base = c.eval(lambda, mu);
        report.symmetry = report.symmetry.max(relative(base, c.eval(mu, lambda)));
        report.diagonal_law = report.diagonal_law.max(relative(c.eval(lambda, lambda), c.constant / lambda));
        report.homogeneity = report.homogeneity.max(relative(c.eval(t * lambda, t * mu), base / t));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{pauli_x, pauli_z};
    use crate::states::{bloch_to_density, validate_state};

    fn bloch(x: f64, y: f64, z: f64) -> BlochVector {
        BlochVector::new(x, y, z).unwrap()
    }

    #[test]
    fn wigner_yanase_values() {
        let wy = mc_wigner_yanase();
        assert_eq!(wy.constant, 1.0);
        assert_eq!(wy.eval(1.0, 1.0), 1.0);
        assert_eq!(wy.eval(0.25, 0.25), 4.0);
        // (2 / (√¾ + √¼))² = 4 / (1 + √3/2)
        let expected = 4.0 / (1.0 + 3f64.sqrt() / 2.0);
        assert!((wy.eval(0.75, 0.25) - expected).abs() < 1e-15);
        assert!((expected - 2.143594).abs() < 1e-6);
    }

    #[test]
    fn extensions_are_marked() {
        assert!(!mc_wigner_yanase().extension);
        assert!(mc_bures().extension && mc_kubo_mori().extension);
        assert_eq!(lookup("bures").unwrap().eval(0.5, 1.5), 1.0);
        assert!(lookup("nope").is_none());
        assert!((kubo_mori(0.3, 0.3 + 1e-13) - 1.0 / 0.3).abs() < 1e-9);
    }

    #[test]
    fn tangent_examples() {
        let diag = validate_state(&ComplexMatrix::diag(&[0.7, 0.3])).unwrap();
        let t = tangent_from_observable(&diag, &pauli_z()).unwrap();
        assert_eq!(t.matrix().max_abs(), 0.0);

        let (nx, ny) = (0.3, -0.5);
        let rho = bloch_to_density(&bloch(nx, ny, 0.4));
        let t = tangent_from_observable(&rho, &pauli_z()).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            [Complex64::new(0.0, 0.0), Complex64::new(-ny, -nx)],
            [Complex64::new(-ny, nx), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(t.matrix().max_abs_diff(&expected) < 1e-15);

        let plus = bloch_to_density(&bloch(1.0, 0.0, 0.0));
        let t = tangent_from_observable(&plus, &pauli_z()).unwrap();
        assert!(t.matrix().max_abs_diff(&crate::matrix::pauli_y()) < 1e-15);
    }

    #[test]
    fn tangent_errors() {
        let rho = DensityMatrix::maximally_mixed(2);
        let skew = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(tangent_from_observable(&rho, &skew), Err(Error::NotHermitian(_))));
        assert_eq!(
            tangent_from_observable(&rho, &ComplexMatrix::identity(4)),
            Err(Error::DimensionMismatch(2, 4))
        );
        assert!(matches!(TangentVector::new(ComplexMatrix::identity(2)), Err(Error::NotTraceless(_))));
    }

    #[test]
    fn metric_eval_examples() {
        let wy = mc_wigner_yanase();
        let rho = validate_state(&ComplexMatrix::diag(&[0.75, 0.25])).unwrap();
        assert_eq!(metric_eval(&rho, &TangentVector::zero(2), &wy).unwrap(), 0.0);

        let a = TangentVector::new(pauli_x()).unwrap();
        let k = metric_eval(&rho, &a, &wy).unwrap();
        assert!((k - 2.0 * 4.0 / (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-13);
        assert!((k - 4.287188).abs() < 1e-6);

        let rho = bloch_to_density(&bloch(0.8, 0.0, 0.0));
        let a = tangent_from_observable(&rho, &pauli_z()).unwrap();
        assert!((metric_eval(&rho, &a, &wy).unwrap() - 3.2).abs() < 1e-13);
    }

    #[test]
    fn metric_eval_rejects_boundary_and_mismatch() {
        let wy = mc_wigner_yanase();
        let pure = bloch_to_density(&bloch(0.0, 0.0, 1.0));
        let a = TangentVector::new(pauli_x()).unwrap();
        assert!(matches!(metric_eval(&pure, &a, &wy), Err(Error::BoundaryState(_))));
        let rho4 = DensityMatrix::maximally_mixed(4);
        assert_eq!(metric_eval(&rho4, &a, &wy), Err(Error::DimensionMismatch(4, 2)));
    }

    #[test]
    fn degenerate_spectrum_uses_diagonal_law() {
        let rho = DensityMatrix::maximally_mixed(2);
        let a = TangentVector::new(pauli_x()).unwrap();
        // 2 |A_01|² c(½, ½) = 2 · 1 · 2
        for c in registry() {
            assert!((metric_eval(&rho, &a, &c).unwrap() - 4.0).abs() < 1e-14, "{}", c.name);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(metric_wy_qubit(&bloch(0.0, 0.0, 0.5), PauliAxis::Z).unwrap(), 0.0);
        assert!((metric_wy_qubit(&bloch(0.8, 0.0, 0.0), PauliAxis::Z).unwrap() - 3.2).abs() < 1e-15);
        assert!((metric_wy_qubit(&bloch(0.0, 0.8, 0.0), PauliAxis::Z).unwrap() - 3.2).abs() < 1e-15);
        assert_eq!(metric_wy_qubit(&BlochVector::origin(), PauliAxis::Z).unwrap(), 0.0);
        assert!(matches!(
            metric_wy_qubit(&bloch(0.6, 0.8, 0.0), PauliAxis::Z),
            Err(Error::BoundaryState(_))
        ));
        // printed constant: 32 · 0.64 · 0.4 against 3.2, a factor 4|n|² = 2.56
        let printed = metric_wy_qubit_printed(&bloch(0.8, 0.0, 0.0), PauliAxis::Z);
        assert!((printed / 3.2 - 2.56).abs() < 1e-12);
    }

    #[test]
    fn property_checker() {
        let report = check_mc_properties(&mc_wigner_yanase(), 1000);
        assert!(report.passes(1e-12), "{report:?}");
        assert_eq!(report.samples, 1000);

        let broken = MCFunction::custom("broken", 1.0, |l, _| l);
        let report = check_mc_properties(&broken, 100);
        assert!(report.symmetry > 1e-3);
        assert!(!report.passes(1e-12));

        let wy = mc_wigner_yanase();
        let (l, m, t) = (0.3, 0.5, 7.0);
        assert!(relative(wy.eval(t * l, t * m), wy.eval(l, m) / t) < 1e-13);
    }
}
