//! Negativity against the Wigner–Yanase metric.
//!
//! For a qubit `ρ` with Bloch vector `n`, the entangling pipeline produces a
//! joint state whose negativity can be compared with `√K_ρ(A, A)` for
//! `A = i[ρ, σ_axis]`. The ratio of the two depends only on `|n|`. Sweeps
//! measure that ratio shell by shell; [`coefficient_vs_published`] sets it beside
//! the published coefficient formula and an analytic alternative without
//! choosing between them.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::channels::{self, KrausChannel};
use crate::entanglement::{ancilla_for, cnot_in_basis, generate_joint_state, negativity, PauliAxis};
use crate::geometry::{
    mc_wigner_yanase, metric_eval, metric_wy_qubit_printed, tangent_from_observable, MCFunction,
    TangentVector,
};
use crate::sampling;
use crate::states::{bloch_to_density, mixedness, BlochVector, DensityMatrix};
use crate::{Error, Result};

/// States closer than this to the surface of the Bloch ball are rejected.
pub const BOUNDARY_MARGIN: f64 = 1e-6;
/// Samples with `√K` at or below this have no defined ratio.
pub const RATIO_FLOOR: f64 = 1e-12;
/// Largest accepted relative spread of the ratio within one shell.
pub const SPREAD_TOL: f64 = 1e-9;
/// Allowed excess `K_after - K_before` under a channel.
pub const CONTRACTIVITY_TOL: f64 = 1e-10;
/// Allowed `|K_after - K_before|` under a unitary channel.
pub const COVARIANCE_TOL: f64 = 1e-9;

/// Shell radii of the standard report.
pub const STANDARD_SHELLS: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99];
/// Directions per shell of the standard report.
pub const STANDARD_DIRECTIONS: usize = 256;

/// One point of the negativity / metric comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationSample {
    pub shell: usize,
    pub radius: f64,
    pub n: BlochVector,
    pub axis: PauliAxis,
    pub negativity: f64,
    pub metric: f64,
    pub sqrt_metric: f64,
    pub mixedness: f64,
    /// `negativity / sqrt_metric`, when `sqrt_metric > 1e-12`.
    pub ratio: Option<f64>,
}

/// Runs both pipelines for one Bloch vector.
///
/// State, tangent `i[ρ, σ_axis]` and the Wigner–Yanase metric on one side;
/// state, ancilla, basis-matched CNOT and negativity on the other.
pub fn relation_check(n: &BlochVector, axis: PauliAxis) -> Result<RelationSample> {
    let r = n.norm();
    if r >= 1.0 - BOUNDARY_MARGIN {
        return Err(Error::BoundaryState(0.5 * (1.0 - r)));
    }
    let rho = bloch_to_density(n);
    let tangent = tangent_from_observable(&rho, &axis.pauli())?;
    let metric = metric_eval(&rho, &tangent, &mc_wigner_yanase())?;
    let joint = generate_joint_state(&rho, &ancilla_for(axis), &cnot_in_basis(axis))?;
    let neg = negativity(&joint)?;
    let sqrt_metric = metric.max(0.0).sqrt();
    Ok(RelationSample {
        shell: 0,
        radius: r,
        n: *n,
        axis,
        negativity: neg,
        metric,
        sqrt_metric,
        mixedness: mixedness(&rho),
        ratio: (sqrt_metric > RATIO_FLOOR).then(|| neg / sqrt_metric),
    })
}

/// Negativities of the x pipeline with the `|+>` ancilla and with the
/// `(|+> + |->)/√2 = |0>` ancilla.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AncillaComparison {
    pub plus_ancilla: f64,
    pub literal_ancilla: f64,
}

pub fn x_ancilla_comparison(n: &BlochVector) -> Result<AncillaComparison> {
    let rho = bloch_to_density(n);
    let u = cnot_in_basis(PauliAxis::X);
    let literal = DensityMatrix::pure(&PauliAxis::Z.plus_state())?;
    Ok(AncillaComparison {
        plus_ancilla: negativity(&generate_joint_state(&rho, &ancilla_for(PauliAxis::X), &u)?)?,
        literal_ancilla: negativity(&generate_joint_state(&rho, &literal, &u)?)?,
    })
}

/// Ratio statistics on one shell `|n| = radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellSummary {
    pub radius: f64,
    pub mixedness: f64,
    pub used: usize,
    pub excluded: usize,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    /// Mean ratio over the shell.
    pub fitted_coefficient: Option<f64>,
    /// `(max - min) / mean`.
    pub spread: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub axis: PauliAxis,
    pub samples: Vec<RelationSample>,
    pub shells: Vec<ShellSummary>,
}

impl SweepReport {
    pub fn max_spread(&self) -> f64 {
        self.shells.iter().filter_map(|s| s.spread).fold(0.0, f64::max)
    }

    /// True when every shell's ratio spread is below `tol`.
    pub fn direction_independent(&self, tol: f64) -> bool {
        self.shells.iter().all(|s| s.spread.is_none_or(|x| x < tol))
    }

    pub fn excluded(&self) -> usize {
        self.shells.iter().map(|s| s.excluded).sum()
    }
}

/// `count` unit vectors on a Fibonacci lattice with poles on the z axis.
pub fn fibonacci_directions(count: usize) -> Vec<[f64; 3]> {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / count as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            [rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

/// Sweeps a Fibonacci direction grid over each shell.
///
/// The grid's poles sit on `axis`, i.e. the z-oriented grid with the axis and
/// z components exchanged. Sweeps of different axes are therefore related
/// sample by sample.
pub fn sweep_bloch_ball(shells: &[f64], directions_per_shell: usize, axis: PauliAxis) -> Result<SweepReport> {
    if directions_per_shell < 8 {
        return Err(Error::InvalidSweep(format!(
            "need at least 8 directions per shell, got {directions_per_shell}"
        )));
    }
    sweep_directions(shells, &fibonacci_directions(directions_per_shell), axis)
}

/// Sweeps explicit z-oriented unit directions over each shell.
pub fn sweep_directions(shells: &[f64], directions: &[[f64; 3]], axis: PauliAxis) -> Result<SweepReport> {
    if shells.is_empty() {
        return Err(Error::InvalidSweep("no shells given".into()));
    }
    if let Some(r) = shells.iter().find(|r| !(**r > 0.0 && **r < 1.0 - BOUNDARY_MARGIN)) {
        return Err(Error::InvalidSweep(format!("shell radius {r} outside (0, 1)")));
    }
    if directions.is_empty() {
        return Err(Error::InvalidSweep("no directions given".into()));
    }

    let mut samples = Vec::with_capacity(shells.len() * directions.len());
    let mut summaries = Vec::with_capacity(shells.len());
    for (shell, &radius) in shells.iter().enumerate() {
        let first = samples.len();
        for d in directions {
            let z_oriented = BlochVector { nx: radius * d[0], ny: radius * d[1], nz: radius * d[2] };
            let n = BlochVector::new(z_oriented.nx, z_oriented.ny, z_oriented.nz)?;
            let mut sample = relation_check(&axis.exchange_with_z(&n), axis)?;
            sample.shell = shell;
            sample.radius = radius;
            samples.push(sample);
        }
        summaries.push(summarize_shell(radius, &samples[first..]));
    }
    Ok(SweepReport { axis, samples, shells: summaries })
}

fn summarize_shell(radius: f64, samples: &[RelationSample]) -> ShellSummary {
    let ratios: Vec<f64> = samples.iter().filter_map(|s| s.ratio).collect();
    let used = ratios.len();
    let (min_ratio, max_ratio, fitted) = if used == 0 {
        (None, None, None)
    } else {
        let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (Some(min), Some(max), Some(ratios.iter().sum::<f64>() / used as f64))
    };
    let spread = match (min_ratio, max_ratio, fitted) {
        (Some(lo), Some(hi), Some(mean)) if mean > 0.0 => Some((hi - lo) / mean),
        _ => None,
    };
    ShellSummary {
        radius,
        mixedness: 0.5 * (1.0 - radius * radius),
        used,
        excluded: samples.len() - used,
        min_ratio,
        max_ratio,
        fitted_coefficient: fitted,
        spread,
    }
}

/// Published coefficient `2√2 (1 - √(2M))^{-1/2}` as a function of mixedness.
pub fn published_coefficient(mixedness: f64) -> f64 {
    2.0 * SQRT_2 / (1.0 - (2.0 * mixedness).sqrt()).sqrt()
}

/// Coefficient obtained by dividing the closed forms of both sides,
/// `√(1 + √(2M)) / (4√2)`.
pub fn oracle_coefficient(mixedness: f64) -> f64 {
    (1.0 + (2.0 * mixedness).sqrt()).sqrt() / (4.0 * SQRT_2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientComparison {
    pub radius: f64,
    pub mixedness: f64,
    pub measured_coefficient: Option<f64>,
    pub published_coefficient: f64,
    pub oracle_coefficient: f64,
    /// `|measured - published| / published`
    pub published_relative_deviation: Option<f64>,
    /// `|measured - oracle| / oracle`
    pub oracle_relative_deviation: Option<f64>,
    /// `published / measured`
    pub published_over_measured: Option<f64>,
    /// Printed qubit metric `32|n⊥|²(1 - √(1-|n|²))` over the evaluated metric,
    /// from the first sample of the shell with a non-zero metric.
    pub printed_metric_over_measured: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub axis: PauliAxis,
    pub rows: Vec<CoefficientComparison>,
}

/// Sets each shell's fitted coefficient beside the published and the
/// analytic coefficient.
pub fn coefficient_vs_published(report: &SweepReport) -> ComparisonReport {
    let rows = report
        .shells
        .iter()
        .enumerate()
        .map(|(index, shell)| {
            let published = published_coefficient(shell.mixedness);
            let oracle = oracle_coefficient(shell.mixedness);
            let measured = shell.fitted_coefficient;
            let printed_metric_over_measured = report
                .samples
                .iter()
                .find(|s| s.shell == index && s.ratio.is_some())
                .map(|s| metric_wy_qubit_printed(&s.n, s.axis) / s.metric);
            CoefficientComparison {
                radius: shell.radius,
                mixedness: shell.mixedness,
                measured_coefficient: measured,
                published_coefficient: published,
                oracle_coefficient: oracle,
                published_relative_deviation: measured.map(|m| (m - published).abs() / published),
                oracle_relative_deviation: measured.map(|m| (m - oracle).abs() / oracle),
                published_over_measured: measured.map(|m| published / m),
                printed_metric_over_measured,
            }
        })
        .collect();
    ComparisonReport { axis: report.axis, rows }
}

/// Channel families drawn by [`monotonicity_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelFamily {
    Identity,
    Depolarizing,
    AmplitudeDamping,
    PhaseDamping,
    Random,
    Unitary,
}

impl ChannelFamily {
    pub const DEFAULT: [ChannelFamily; 5] = [
        ChannelFamily::Depolarizing,
        ChannelFamily::AmplitudeDamping,
        ChannelFamily::PhaseDamping,
        ChannelFamily::Random,
        ChannelFamily::Unitary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChannelFamily::Identity => "identity",
            ChannelFamily::Depolarizing => "depolarizing",
            ChannelFamily::AmplitudeDamping => "amplitude_damping",
            ChannelFamily::PhaseDamping => "phase_damping",
            ChannelFamily::Random => "random",
            ChannelFamily::Unitary => "unitary",
        }
    }

    /// Draws one channel; returns the channel and its scalar parameter, if any.
    fn draw<R: Rng + ?Sized>(self, rng: &mut R) -> Result<(KrausChannel, Option<f64>)> {
        // Damping strengths stop short of 1 so outputs stay full rank.
        Ok(match self {
            ChannelFamily::Identity => (channels::identity(2), None),
            ChannelFamily::Depolarizing => {
                let p = rng.random::<f64>();
                (channels::depolarizing(p)?, Some(p))
            }
            ChannelFamily::AmplitudeDamping => {
                let g = 0.99 * rng.random::<f64>();
                (channels::amplitude_damping(g)?, Some(g))
            }
            ChannelFamily::PhaseDamping => {
                let l = rng.random::<f64>();
                (channels::phase_damping(l)?, Some(l))
            }
            ChannelFamily::Random => (channels::random_channel_from(rng), None),
            ChannelFamily::Unitary => (channels::unitary(sampling::random_unitary(rng, 2))?, None),
        })
    }
}

impl fmt::Display for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "identity" => Ok(ChannelFamily::Identity),
            "depolarizing" => Ok(ChannelFamily::Depolarizing),
            "amplitude_damping" | "amplitude-damping" => Ok(ChannelFamily::AmplitudeDamping),
            "phase_damping" | "phase-damping" => Ok(ChannelFamily::PhaseDamping),
            "random" => Ok(ChannelFamily::Random),
            "unitary" => Ok(ChannelFamily::Unitary),
            other => Err(format!("unknown channel family '{other}'")),
        }
    }
}

/// One `(ρ, A, Λ)` draw and both readings of contractivity.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicitySample {
    pub family: ChannelFamily,
    pub index: usize,
    pub parameter: Option<f64>,
    pub n: BlochVector,
    /// `K_ρ(A, A)`
    pub metric_before: f64,
    /// `K_{Λρ}(ΛA, ΛA)`
    pub metric_after_transformed: f64,
    /// `K_{Λρ}(A, A)`
    pub metric_after_fixed: f64,
    pub trace_adjustment: f64,
    pub negativity_before: f64,
    /// Negativity after `Λ` acts on the ancilla of the joint state.
    pub negativity_after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySummary {
    pub family: ChannelFamily,
    pub samples: usize,
    /// Draws skipped because `Λρ` reached the boundary.
    pub skipped: usize,
    /// `max(0, max K_{Λρ}(ΛA,ΛA) - K_ρ(A,A))`
    pub max_violation_transformed: f64,
    /// `max(0, max K_{Λρ}(A,A) - K_ρ(A,A))`
    pub max_violation_fixed: f64,
    /// `max |K_{Λρ}(ΛA,ΛA) - K_ρ(A,A)|`
    pub max_abs_change_transformed: f64,
    pub max_negativity_violation: f64,
    pub max_trace_adjustment: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub seed: u64,
    pub samples_per_family: usize,
    pub families: Vec<FamilySummary>,
    pub samples: Vec<MonotonicitySample>,
}

impl MonotonicityReport {
    pub fn max_violation_transformed(&self) -> f64 {
        self.families.iter().map(|f| f.max_violation_transformed).fold(0.0, f64::max)
    }

    pub fn family(&self, family: ChannelFamily) -> Option<&FamilySummary> {
        self.families.iter().find(|f| f.family == family)
    }

    /// Contractivity under the transformed-tangent reading within `tol`.
    pub fn transformed_holds(&self, tol: f64) -> bool {
        self.max_violation_transformed() <= tol
    }
}

/// Draws `samples` random `(ρ, A, Λ)` triples per family and records how the
/// Wigner–Yanase metric and the negativity change under `Λ`.
pub fn monotonicity_scan(samples: usize, seed: u64, families: &[ChannelFamily]) -> Result<MonotonicityReport> {
    monotonicity_scan_with(samples, seed, families, &mc_wigner_yanase())
}

/// As [`monotonicity_scan`] for an arbitrary Morozova–Čencov function.
pub fn monotonicity_scan_with(
    samples: usize,
    seed: u64,
    families: &[ChannelFamily],
    c: &MCFunction,
) -> Result<MonotonicityReport> {
    if samples == 0 {
        return Err(Error::InvalidSweep("need at least one sample".into()));
    }
    let mut rng = sampling::seeded(seed);
    let z_unitary = cnot_in_basis(PauliAxis::Z);
    let z_ancilla = ancilla_for(PauliAxis::Z);

    let mut all = Vec::with_capacity(samples * families.len());
    let mut summaries = Vec::with_capacity(families.len());
    for &family in families {
        let mut summary = FamilySummary {
            family,
            samples: 0,
            skipped: 0,
            max_violation_transformed: 0.0,
            max_violation_fixed: 0.0,
            max_abs_change_transformed: 0.0,
            max_negativity_violation: 0.0,
            max_trace_adjustment: 0.0,
        };
        for index in 0..samples {
            let n = sampling::random_bloch(&mut rng, 0.95);
            let tangent = TangentVector::new(sampling::random_traceless_hermitian(&mut rng, 2))?;
            let (channel, parameter) = family.draw(&mut rng)?;

            let rho = bloch_to_density(&n);
            let image = channel.apply_state(&rho)?;
            let (tangent_image, trace_adjustment) = channel.apply_tangent(&tangent)?;

            let before = metric_eval(&rho, &tangent, c)?;
            let (after_transformed, after_fixed) =
                match (metric_eval(&image, &tangent_image, c), metric_eval(&image, &tangent, c)) {
                    (Ok(t), Ok(f)) => (t, f),
                    (Err(Error::BoundaryState(_)), _) | (_, Err(Error::BoundaryState(_))) => {
                        summary.skipped += 1;
                        continue;
                    }
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                };

            let joint = generate_joint_state(&rho, &z_ancilla, &z_unitary)?;
            let negativity_before = negativity(&joint)?;
            let negativity_after = negativity(&channel.on_second_of_pair().apply_state(&joint)?)?;

            summary.samples += 1;
            summary.max_violation_transformed =
                summary.max_violation_transformed.max(after_transformed - before);
            summary.max_violation_fixed = summary.max_violation_fixed.max(after_fixed - before);
            summary.max_abs_change_transformed =
                summary.max_abs_change_transformed.max((after_transformed - before).abs());
            summary.max_negativity_violation =
                summary.max_negativity_violation.max(negativity_after - negativity_before);
            summary.max_trace_adjustment = summary.max_trace_adjustment.max(trace_adjustment);

            all.push(MonotonicitySample {
                family,
                index,
                parameter,
                n,
                metric_before: before,
                metric_after_transformed: after_transformed,
                metric_after_fixed: after_fixed,
                trace_adjustment,
                negativity_before,
                negativity_after,
            });
        }
        summaries.push(summary);
    }
    Ok(MonotonicityReport { seed, samples_per_family: samples, families: summaries, samples: all })
}
