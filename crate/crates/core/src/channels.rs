//! Qubit CPTP maps in Kraus form.

use rand::Rng;

use crate::geometry::{TangentVector, TRACELESS_TOL};
use crate::matrix::{pauli_x, pauli_y, pauli_z, tensor, ComplexMatrix};
use crate::sampling;
use crate::states::DensityMatrix;
use crate::{Error, Result};

/// Tolerance on `Σ K_k^* K_k = I`.
pub const TRACE_PRESERVING_TOL: f64 = 1e-12;

/// Number of Kraus operators drawn by [`random_channel`].
const RANDOM_KRAUS_RANK: usize = 4;

/// A trace-preserving completely positive map `Λ(X) = Σ_k K_k X K_k^*`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kraus_ops: Vec<ComplexMatrix>,
    label: String,
}

impl KrausChannel {
    pub fn new(label: impl Into<String>, kraus_ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus_ops.first().ok_or(Error::EmptyKraus)?;
        let dim = first.dim();
        if let Some(k) = kraus_ops.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, k.dim()));
        }
        let channel = Self { kraus_ops, label: label.into() };
        let residual = channel.trace_preservation_residual();
        if residual > TRACE_PRESERVING_TOL {
            return Err(Error::NotTracePreserving(residual));
        }
        Ok(channel)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    pub fn dim(&self) -> usize {
        self.kraus_ops[0].dim()
    }

    /// Max-abs deviation of `Σ K^* K` from the identity.
    pub fn trace_preservation_residual(&self) -> f64 {
        let dim = self.dim();
        let sum = self
            .kraus_ops
            .iter()
            .fold(ComplexMatrix::zeros(dim), |acc, k| &acc + &(&k.adjoint() * k));
        sum.max_abs_diff(&ComplexMatrix::identity(dim))
    }

    /// Applies the channel to a state.
    pub fn apply_state(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        Ok(DensityMatrix::from_trusted(apply(self, rho.matrix())?))
    }

    /// Pushes a tangent vector through the linear extension of the channel.
    ///
    /// Trace preservation keeps the image traceless up to rounding; if the
    /// trace drifts past `1e-12` the traceless part is returned. The second
    /// value is the magnitude of the trace that was removed.
    pub fn apply_tangent(&self, tangent: &TangentVector) -> Result<(TangentVector, f64)> {
        let image = apply(self, tangent.matrix())?;
        if image.trace().norm() > TRACELESS_TOL {
            TangentVector::traceless_part(&image)
        } else {
            Ok((TangentVector::new(image)?, 0.0))
        }
    }

    /// `id ⊗ Λ`: this channel acting on the second qubit of a pair.
    pub fn on_second_of_pair(&self) -> KrausChannel {
        let id = ComplexMatrix::identity(2);
        KrausChannel {
            kraus_ops: self.kraus_ops.iter().map(|k| tensor(&id, k)).collect(),
            label: format!("id⊗{}", self.label),
        }
    }

    /// `Λ ⊗ id`: this channel acting on the first qubit of a pair.
    pub fn on_first_of_pair(&self) -> KrausChannel {
        let id = ComplexMatrix::identity(2);
        KrausChannel {
            kraus_ops: self.kraus_ops.iter().map(|k| tensor(k, &id)).collect(),
            label: format!("{}⊗id", self.label),
        }
    }
}

/// `Σ_k K_k m K_k^*`.
pub fn apply(channel: &KrausChannel, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.dim() != channel.dim() {
        return Err(Error::DimensionMismatch(channel.dim(), m.dim()));
    }
    let mut out = ComplexMatrix::zeros(m.dim());
    for k in &channel.kraus_ops {
        out = &out + &m.conjugate_by(k)?;
    }
    Ok(out)
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::ParameterOutOfRange { name, value });
    }
    Ok(())
}

pub fn identity(dim: usize) -> KrausChannel {
    KrausChannel { kraus_ops: vec![ComplexMatrix::identity(dim)], label: "identity".into() }
}

/// Depolarizing channel; shrinks the Bloch vector by `1 - p`.
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    check_unit_interval("p", p)?;
    let a = (1.0 - 0.75 * p).sqrt();
    let b = (0.25 * p).sqrt();
    KrausChannel::new(
        "depolarizing",
        vec![
            ComplexMatrix::identity(2).scale_real(a),
            pauli_x().scale_real(b),
            pauli_y().scale_real(b),
            pauli_z().scale_real(b),
        ],
    )
}

/// Amplitude damping towards `|0>` with decay probability `gamma`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    check_unit_interval("gamma", gamma)?;
    let k0 = ComplexMatrix::diag(&[1.0, (1.0 - gamma).sqrt()]);
    let k1 = ComplexMatrix::from_real_rows(&[[0.0, gamma.sqrt()], [0.0, 0.0]])?;
    KrausChannel::new("amplitude_damping", vec![k0, k1])
}

/// Dephasing in the computational basis; coherences scale by `1 - lambda`.
pub fn phase_damping(lambda: f64) -> Result<KrausChannel> {
    check_unit_interval("lambda", lambda)?;
    let s = lambda.sqrt();
    KrausChannel::new(
        "phase_damping",
        vec![
            ComplexMatrix::identity(2).scale_real((1.0 - lambda).sqrt()),
            ComplexMatrix::diag(&[s, 0.0]),
            ComplexMatrix::diag(&[0.0, s]),
        ],
    )
}

/// Conjugation by a single unitary.
pub fn unitary(u: ComplexMatrix) -> Result<KrausChannel> {
    KrausChannel::new("unitary", vec![u])
}

/// A qubit channel read off a random isometry `C² -> C^8`, deterministic per
/// seed.
pub fn random_channel(seed: u64) -> KrausChannel {
    random_channel_from(&mut sampling::seeded(seed))
}

/// As [`random_channel`], drawing from a caller-owned RNG.
pub fn random_channel_from<R: Rng + ?Sized>(rng: &mut R) -> KrausChannel {
    let rows = 2 * RANDOM_KRAUS_RANK;
    let columns = sampling::random_isometry_columns(rng, rows, 2);
    let kraus_ops = (0..RANDOM_KRAUS_RANK)
        .map(|k| ComplexMatrix::from_fn(2, |i, j| columns[j][2 * k + i]))
        .collect();
    KrausChannel { kraus_ops, label: "random".into() }
}
