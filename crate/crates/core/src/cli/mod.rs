//! The `qgeo` command-line front end.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 property violation.

mod record;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::entanglement::{
    ancilla_for, cnot_in_basis, generate_joint_state, negativity, negativity_closed_form_axis, PauliAxis,
};
use crate::geometry::{self, metric_eval, metric_wy_qubit, metric_wy_qubit_printed, tangent_from_observable};
use crate::matrix::eigh;
use crate::states::{bloch_to_density, mixedness, BlochVector};
use crate::verify::{
    self, coefficient_vs_published, monotonicity_scan, sweep_bloch_ball, x_ancilla_comparison, ChannelFamily,
    MonotonicityReport, SweepReport,
};

pub use record::{format_float, format_opt, OutputRecord, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Fixed header of the per-sample relation CSV.
pub const RELATION_HEADER: [&str; 10] =
    ["shell", "nx", "ny", "nz", "axis", "negativity", "metric", "sqrt_metric", "mixedness", "ratio"];

/// Fixed header of the per-sample monotonicity CSV.
pub const MONOTONICITY_HEADER: [&str; 12] = [
    "family",
    "index",
    "parameter",
    "nx",
    "ny",
    "nz",
    "metric_before",
    "metric_after_transformed",
    "metric_after_fixed",
    "trace_adjustment",
    "negativity_before",
    "negativity_after",
];

#[derive(Debug, Parser)]
#[command(name = "qgeo", version, about = "Monotone metrics and negativity on the qubit state space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a monotone metric on the tangent i[rho, sigma_axis]
    Metric(MetricArgs),
    /// Negativity of the joint state, from the matrix pipeline and the closed form
    Negativity(NegativityArgs),
    /// Sweep the Bloch ball and measure negativity / sqrt(metric) per shell
    VerifyRelation(VerifyArgs),
    /// Random contractivity scan under CPTP channels
    Monotonicity(MonotonicityArgs),
}

#[derive(Debug, Args)]
struct MetricArgs {
    /// Bloch vector as nx,ny,nz
    #[arg(long, value_parser = parse_bloch, allow_hyphen_values = true)]
    bloch: [f64; 3],
    /// Observable axis
    #[arg(long, default_value = "z")]
    axis: PauliAxis,
    /// Morozova-Cencov function: wigner_yanase, bures or kubo_mori
    #[arg(long, default_value = "wigner_yanase", value_parser = parse_function)]
    function: String,
}

#[derive(Debug, Args)]
struct NegativityArgs {
    /// Bloch vector as nx,ny,nz
    #[arg(long, value_parser = parse_bloch, allow_hyphen_values = true)]
    bloch: [f64; 3],
    /// Basis of the copy unitary and ancilla
    #[arg(long, default_value = "z")]
    axis: PauliAxis,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Shell radii, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = verify::STANDARD_SHELLS.to_vec())]
    shells: Vec<f64>,
    /// Fibonacci directions per shell
    #[arg(long, default_value_t = verify::STANDARD_DIRECTIONS)]
    dirs: usize,
    #[arg(long, default_value = "z")]
    axis: PauliAxis,
    /// Per-sample CSV path (standard output if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON summary path (standard output if omitted)
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MonotonicityArgs {
    /// Samples per channel family
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Channel families, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = ChannelFamily::DEFAULT.to_vec())]
    channels: Vec<ChannelFamily>,
    /// Per-sample CSV path (standard output if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON summary path (standard output if omitted)
    #[arg(long)]
    summary: Option<PathBuf>,
}

fn parse_bloch(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected nx,ny,nz, got '{s}'"));
    }
    let mut v = [0.0; 3];
    for (slot, part) in v.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|_| format!("'{part}' is not a number"))?;
    }
    Ok(v)
}

fn parse_function(s: &str) -> Result<String, String> {
    geometry::lookup(s)
        .map(|f| f.name.to_owned())
        .ok_or_else(|| format!("unknown function '{s}'"))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Metric(a) => cmd_metric(&a, stdout),
        Command::Negativity(a) => cmd_negativity(&a, stdout),
        Command::VerifyRelation(a) => cmd_verify_relation(&a, stdout),
        Command::Monotonicity(a) => cmd_monotonicity(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug)]
enum CliError {
    Domain(crate::Error),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        EXIT_DOMAIN
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult = Result<i32, CliError>;

fn bloch_arg(v: &[f64; 3]) -> Result<BlochVector, crate::Error> {
    BlochVector::new(v[0], v[1], v[2])
}

fn cmd_metric(args: &MetricArgs, stdout: &mut dyn Write) -> CliResult {
    let n = bloch_arg(&args.bloch)?;
    let c = geometry::lookup(&args.function).expect("validated by the parser");
    let rho = bloch_to_density(&n);
    let tangent = tangent_from_observable(&rho, &args.axis.pauli())?;
    let metric = metric_eval(&rho, &tangent, &c)?;
    let eig = eigh(rho.matrix())?;

    let mut rec = OutputRecord::new()
        .with("nx", n.nx)
        .with("ny", n.ny)
        .with("nz", n.nz)
        .with("axis", args.axis.as_str())
        .with("function", c.name)
        .with("extension", c.extension)
        .with("metric", metric);
    if c.name == "wigner_yanase" {
        rec.push("closed_form", metric_wy_qubit(&n, args.axis)?);
        rec.push("printed_closed_form", metric_wy_qubit_printed(&n, args.axis));
    }
    for (k, l) in eig.eigenvalues.iter().enumerate() {
        rec.push(&format!("eigenvalue_{k}"), *l);
    }
    let a = tangent.matrix();
    for i in 0..2 {
        for j in 0..2 {
            rec.push(&format!("tangent_{i}{j}_re"), a[(i, j)].re);
            rec.push(&format!("tangent_{i}{j}_im"), a[(i, j)].im);
        }
    }
    stdout.write_all(rec.to_json().as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_negativity(args: &NegativityArgs, stdout: &mut dyn Write) -> CliResult {
    let n = bloch_arg(&args.bloch)?;
    let rho = bloch_to_density(&n);
    let joint = generate_joint_state(&rho, &ancilla_for(args.axis), &cnot_in_basis(args.axis))?;
    let from_matrix = negativity(&joint)?;
    let closed = negativity_closed_form_axis(&n, args.axis);
    let rec = OutputRecord::new()
        .with("nx", n.nx)
        .with("ny", n.ny)
        .with("nz", n.nz)
        .with("axis", args.axis.as_str())
        .with("mixedness", mixedness(&rho))
        .with("negativity_matrix", from_matrix)
        .with("negativity_closed_form", closed)
        .with("difference", (from_matrix - closed).abs());
    stdout.write_all(rec.to_json().as_bytes())?;
    Ok(EXIT_OK)
}

fn emit(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes),
        None => stdout.write_all(bytes),
    }
}

/// Per-sample CSV of a sweep.
pub fn relation_csv(report: &SweepReport) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RELATION_HEADER)?;
    for s in &report.samples {
        w.write_record([
            format_float(s.radius),
            format_float(s.n.nx),
            format_float(s.n.ny),
            format_float(s.n.nz),
            s.axis.as_str().to_owned(),
            format_float(s.negativity),
            format_float(s.metric),
            format_float(s.sqrt_metric),
            format_float(s.mixedness),
            format_opt(s.ratio),
        ])?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// JSON summary of a sweep with the coefficient comparison.
pub fn relation_summary(report: &SweepReport, directions: usize) -> crate::Result<OutputRecord> {
    let comparison = coefficient_vs_published(report);
    let shells: Vec<OutputRecord> = report
        .shells
        .iter()
        .zip(&comparison.rows)
        .map(|(s, c)| {
            OutputRecord::new()
                .with("radius", s.radius)
                .with("mixedness", s.mixedness)
                .with("used", s.used)
                .with("excluded", s.excluded)
                .with("min_ratio", s.min_ratio)
                .with("max_ratio", s.max_ratio)
                .with("spread", s.spread)
                .with("measured_coefficient", c.measured_coefficient)
                .with("published_coefficient", c.published_coefficient)
                .with("oracle_coefficient", c.oracle_coefficient)
                .with("published_relative_deviation", c.published_relative_deviation)
                .with("oracle_relative_deviation", c.oracle_relative_deviation)
                .with("published_over_measured", c.published_over_measured)
                .with("printed_metric_over_measured", c.printed_metric_over_measured)
        })
        .collect();

    let mut rec = OutputRecord::new()
        .with("axis", report.axis.as_str())
        .with("directions_per_shell", directions)
        .with("samples", report.samples.len())
        .with("excluded", report.excluded())
        .with("spread_tolerance", verify::SPREAD_TOL)
        .with("max_spread", report.max_spread())
        .with("direction_independent", report.direction_independent(verify::SPREAD_TOL));
    if report.axis == PauliAxis::X {
        let mut literal = 0.0f64;
        for s in &report.samples {
            literal = literal.max(x_ancilla_comparison(&s.n)?.literal_ancilla);
        }
        rec.push("literal_ancilla_max_negativity", literal);
    }
    rec.push("shells", shells);
    Ok(rec)
}

fn cmd_verify_relation(args: &VerifyArgs, stdout: &mut dyn Write) -> CliResult {
    let report = sweep_bloch_ball(&args.shells, args.dirs, args.axis)?;
    let csv = relation_csv(&report)?;
    let summary = relation_summary(&report, args.dirs)?;
    emit(args.out.as_deref(), &csv, stdout)?;
    emit(args.summary.as_deref(), summary.to_json().as_bytes(), stdout)?;
    Ok(if report.direction_independent(verify::SPREAD_TOL) { EXIT_OK } else { EXIT_VIOLATION })
}

/// Per-sample CSV of a monotonicity scan.
pub fn monotonicity_csv(report: &MonotonicityReport) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(MONOTONICITY_HEADER)?;
    for s in &report.samples {
        w.write_record([
            s.family.as_str().to_owned(),
            s.index.to_string(),
            format_opt(s.parameter),
            format_float(s.n.nx),
            format_float(s.n.ny),
            format_float(s.n.nz),
            format_float(s.metric_before),
            format_float(s.metric_after_transformed),
            format_float(s.metric_after_fixed),
            format_float(s.trace_adjustment),
            format_float(s.negativity_before),
            format_float(s.negativity_after),
        ])?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// JSON summary of a monotonicity scan.
pub fn monotonicity_summary(report: &MonotonicityReport) -> OutputRecord {
    let families: Vec<OutputRecord> = report
        .families
        .iter()
        .map(|f| {
            let mut rec = OutputRecord::new()
                .with("family", f.family.as_str())
                .with("samples", f.samples)
                .with("skipped", f.skipped)
                .with("max_violation_transformed", f.max_violation_transformed)
                .with("max_violation_fixed", f.max_violation_fixed)
                .with("max_abs_change_transformed", f.max_abs_change_transformed)
                .with("max_negativity_violation", f.max_negativity_violation)
                .with("max_trace_adjustment", f.max_trace_adjustment);
            if f.family == ChannelFamily::Unitary {
                rec.push("covariance_holds", f.max_abs_change_transformed < verify::COVARIANCE_TOL);
            }
            rec
        })
        .collect();
    OutputRecord::new()
        .with("function", "wigner_yanase")
        .with("seed", report.seed)
        .with("samples_per_family", report.samples_per_family)
        .with("tolerance", verify::CONTRACTIVITY_TOL)
        .with("covariance_tolerance", verify::COVARIANCE_TOL)
        .with("max_violation_transformed", report.max_violation_transformed())
        .with("transformed_holds", report.transformed_holds(verify::CONTRACTIVITY_TOL))
        .with("families", families)
}

fn cmd_monotonicity(args: &MonotonicityArgs, stdout: &mut dyn Write) -> CliResult {
    let report = monotonicity_scan(args.samples, args.seed, &args.channels)?;
    let csv = monotonicity_csv(&report)?;
    emit(args.out.as_deref(), &csv, stdout)?;
    emit(args.summary.as_deref(), monotonicity_summary(&report).to_json().as_bytes(), stdout)?;
    Ok(if report.transformed_holds(verify::CONTRACTIVITY_TOL) { EXIT_OK } else { EXIT_VIOLATION })
}
