//! Batch command-line interface over the qudit-correlations library.
//!
//! Every subcommand reads its inputs from files, prints to stdout, and
//! signals its verdict through the exit code:
//!
//! * 0 - success (including "PPT" and "inequality holds")
//! * 2 - usage error
//! * 3 - NPT verdict
//! * 4 - energy-entropy inequality violated
//! * 5 - invalid input matrix or vector
//!
//! Errors print exactly one line to stderr.

use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand};
use qudit_correlations::{
    artificial_reduce, check_energy_entropy_inequality, classical, embed_pad, io, is_ppt,
    mutual_quantum_information, shannon_entropy, thermo_report, tolerance, von_neumann_entropy,
    DensityMatrix, Error, FactorShape, HermitianObservable, MarginalSpec, MatrixDocument,
    MeasureReport, ProbVector, ReportFormat,
};

const LN_2: f64 = std::f64::consts::LN_2;

#[derive(Parser)]
#[command(
    name = "quditcorr",
    version,
    about = "Entropy and correlation measures for qudit states viewed as virtual multipartite systems",
    long_about = "Interprets a probability vector over N outcomes, or an NxN density matrix, as a \
                  composite of virtual subsystems fixed by a factorization N = X1*X2*... and the \
                  index map y = x1 + (x2-1)X1 + (x3-1)X1X2 + ..., then computes entropies, mutual \
                  and conditional information, reduced states, entanglement witnesses, and \
                  Gibbs-state thermodynamics over that decomposition."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map linear indices to subsystem coordinates
    ///
    /// Inverts y = x1 + (x2-1)X1 + (x3-1)X1X2 + ... for the factorization
    /// given by --shape. With --y, prints one coordinate tuple; with --all,
    /// prints the whole table as CSV.
    DecomposeIndex(DecomposeIndexArgs),
    /// Entropy of a distribution or state, in nats
    ///
    /// S = -sum p ln p for a probability vector, S = -tr(rho ln rho) for a
    /// density matrix.
    Entropy(EntropyArgs),
    /// Mutual information across a two-factor decomposition
    ///
    /// I = S(1) + S(2) - S(1,2), where S(i) is the entropy of the marginal
    /// (or reduced state) on virtual axis i. Nonnegative.
    Mutual(MutualArgs),
    /// Conditional information across a three-factor decomposition
    ///
    /// I_C = S(1,2) + S(2,3) - S(2) - S(1,2,3). Nonnegative by strong
    /// subadditivity.
    Conditional(ConditionalArgs),
    /// Partial trace onto chosen virtual axes
    ///
    /// Writes the reduced density matrix as a matrix document.
    Reduce(ReduceArgs),
    /// Positive-partial-transpose entanglement test
    ///
    /// A negative eigenvalue of the partially transposed matrix certifies
    /// entanglement; PPT implies separability only for 2x2 and 2x3 shapes.
    /// Exit code 0 means PPT, 3 means NPT.
    Ppt(PptArgs),
    /// Embed a state in a larger space with zero rows and columns
    ///
    /// The spectrum gains k zeros and the entropy is unchanged, making a
    /// prime-dimensional state analyzable under a composite shape.
    Pad(PadArgs),
    /// Sweep Gibbs states rho(beta) = exp(-beta H)/tr exp(-beta H) over a
    /// beta grid
    ///
    /// Emits CSV with energy E = tr(H rho), entropy S, free energy
    /// F = E - S/beta, ln Z, and (with --shape) the thermal mutual
    /// information of the Gibbs state.
    GibbsScan(GibbsScanArgs),
    /// Check the energy-entropy inequality tr(H rho) + S(rho) <= ln tr exp(H)
    ///
    /// Prints the slack; exit code 0 if it holds, 4 if violated. The slack
    /// vanishes exactly at rho = exp(H)/tr exp(H).
    CheckInequality(CheckInequalityArgs),
}

#[derive(clap::Args)]
struct DecomposeIndexArgs {
    /// System dimension N
    #[arg(long)]
    dim: usize,
    /// Comma-separated factors X1,X2[,X3...] with product N
    #[arg(long)]
    shape: String,
    /// Single linear index to decompose (1-based)
    #[arg(long)]
    y: Option<usize>,
    /// Print the full table as CSV with header y,x1,x2[,x3...]
    #[arg(long)]
    all: bool,
}

#[derive(clap::Args)]
struct EntropyArgs {
    /// Probability vector file (newline-separated reals or a JSON array)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Density matrix document
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Display in bits instead of nats
    #[arg(long)]
    bits: bool,
    /// Emit a report instead of a bare number: text, csv, or structured
    #[arg(long)]
    report: Option<String>,
    /// Validation tolerance override, within [1e-12, 1e-6]
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(clap::Args)]
struct MutualArgs {
    /// Two comma-separated factors X1,X2
    #[arg(long)]
    shape: String,
    /// Probability vector file
    #[arg(long)]
    input: Option<PathBuf>,
    /// Density matrix document
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Display in bits instead of nats
    #[arg(long)]
    bits: bool,
    /// Emit a report instead of a bare number: text, csv, or structured
    #[arg(long)]
    report: Option<String>,
    /// Validation tolerance override, within [1e-12, 1e-6]
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(clap::Args)]
struct ConditionalArgs {
    /// Three comma-separated factors X1,X2,X3
    #[arg(long)]
    shape: String,
    /// Probability vector file
    #[arg(long)]
    input: Option<PathBuf>,
    /// Density matrix document
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Display in bits instead of nats
    #[arg(long)]
    bits: bool,
    /// Emit a report instead of a bare number: text, csv, or structured
    #[arg(long)]
    report: Option<String>,
    /// Validation tolerance override, within [1e-12, 1e-6]
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(clap::Args)]
struct ReduceArgs {
    /// Comma-separated factors of the full system
    #[arg(long)]
    shape: String,
    /// Comma-separated 1-based axes to keep, strictly increasing
    #[arg(long)]
    keep: String,
    /// Density matrix document
    #[arg(long)]
    matrix: PathBuf,
    /// Write the reduced matrix here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Validation tolerance override, within [1e-12, 1e-6]
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(clap::Args)]
struct PptArgs {
    /// Two comma-separated factors X1,X2
    #[arg(long)]
    shape: String,
    /// Density matrix document
    #[arg(long)]
    matrix: PathBuf,
    /// Report format: text (default), csv, or structured
    #[arg(long)]
    report: Option<String>,
    /// Validation tolerance override, within [1e-12, 1e-6]
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(clap::Args)]
struct PadArgs {
    /// Number of zero levels to append
    #[arg(long)]
    k: usize,
    /// Density matrix document
    #[arg(long)]
    matrix: PathBuf,
    /// Write the padded matrix here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Validation tolerance override, within [1e-12, 1e-6]
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(clap::Args)]
struct GibbsScanArgs {
    /// Hermitian generator document
    #[arg(long)]
    hamiltonian: PathBuf,
    /// First inverse temperature of the grid
    #[arg(long)]
    beta_min: f64,
    /// Last inverse temperature of the grid
    #[arg(long)]
    beta_max: f64,
    /// Number of grid points (>= 1)
    #[arg(long)]
    steps: usize,
    /// Optional two-factor shape; adds a mutual_information column
    #[arg(long)]
    shape: Option<String>,
    /// Validation tolerance override, within [1e-12, 1e-6]
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(clap::Args)]
struct CheckInequalityArgs {
    /// Density matrix document
    #[arg(long)]
    matrix: PathBuf,
    /// Hermitian generator document
    #[arg(long)]
    hamiltonian: PathBuf,
    /// Emit a report instead of a bare number: text, csv, or structured
    #[arg(long)]
    report: Option<String>,
    /// Validation tolerance override, within [1e-12, 1e-6]
    #[arg(long)]
    tolerance: Option<f64>,
}

enum CliError {
    /// Bad flags or inconsistent arguments; exit 2.
    Usage(String),
    /// Unreadable or invalid input data; exit 5.
    Input(Error),
}

type CliResult<T> = Result<T, CliError>;

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: usage: {msg}");
            2
        }
        Err(CliError::Input(e)) => {
            eprintln!("error: invalid input: {e}");
            5
        }
    };
    process::exit(code);
}

fn run(command: Command) -> CliResult<i32> {
    match command {
        Command::DecomposeIndex(args) => decompose_index(args),
        Command::Entropy(args) => entropy(args),
        Command::Mutual(args) => mutual(args),
        Command::Conditional(args) => conditional(args),
        Command::Reduce(args) => reduce(args),
        Command::Ppt(args) => ppt(args),
        Command::Pad(args) => pad(args),
        Command::GibbsScan(args) => gibbs_scan(args),
        Command::CheckInequality(args) => check_inequality(args),
    }
}

fn decompose_index(args: DecomposeIndexArgs) -> CliResult<i32> {
    let shape = parse_shape(&args.shape)?;
    if shape.dim() != args.dim {
        return Err(CliError::Usage(format!(
            "shape {} has product {}, but --dim is {}",
            shape,
            shape.dim(),
            args.dim
        )));
    }
    match (args.y, args.all) {
        (Some(_), true) | (None, false) => Err(CliError::Usage(
            "pass exactly one of --y or --all".into(),
        )),
        (Some(y), false) => {
            let coords = shape
                .decompose(y)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            println!("{coords}");
            Ok(0)
        }
        (None, true) => {
            let header: Vec<String> = (1..=shape.arity()).map(|i| format!("x{i}")).collect();
            println!("y,{}", header.join(","));
            for (y, coords) in shape.cells() {
                println!("{y},{coords}");
            }
            Ok(0)
        }
    }
}

fn entropy(args: EntropyArgs) -> CliResult<i32> {
    let tol = resolve_tolerance(args.tolerance)?;
    let format = parse_report(args.report.as_deref())?;
    let (value, descriptor) = match pick_source(&args.input, &args.matrix)? {
        Source::Vector(path) => (shannon_entropy(&load_vector(path)?), describe(path)),
        Source::Matrix(path) => (
            von_neumann_entropy(&load_density(path, tol)?),
            describe(path),
        ),
    };
    let report = MeasureReport {
        input: Some(descriptor),
        entropy: Some(in_units(value, args.bits)),
        ..Default::default()
    };
    emit_scalar(value, args.bits, format, &report);
    Ok(0)
}

fn mutual(args: MutualArgs) -> CliResult<i32> {
    let tol = resolve_tolerance(args.tolerance)?;
    let format = parse_report(args.report.as_deref())?;
    let shape = parse_shape_arity(&args.shape, 2)?;
    let (value, descriptor) = match pick_source(&args.input, &args.matrix)? {
        Source::Vector(path) => {
            let p = load_vector(path)?;
            require_dim(&shape, p.dim())?;
            (
                classical::mutual_information(&p, &shape).map_err(CliError::Input)?,
                describe(path),
            )
        }
        Source::Matrix(path) => {
            let rho = load_density(path, tol)?;
            require_dim(&shape, rho.dim())?;
            (
                mutual_quantum_information(&rho, &shape).map_err(CliError::Input)?,
                describe(path),
            )
        }
    };
    let report = MeasureReport {
        input: Some(descriptor),
        shape: Some(shape.to_string()),
        mutual: Some(in_units(value, args.bits)),
        ..Default::default()
    };
    emit_scalar(value, args.bits, format, &report);
    Ok(0)
}

fn conditional(args: ConditionalArgs) -> CliResult<i32> {
    let tol = resolve_tolerance(args.tolerance)?;
    let format = parse_report(args.report.as_deref())?;
    let shape = parse_shape_arity(&args.shape, 3)?;
    let (value, descriptor) = match pick_source(&args.input, &args.matrix)? {
        Source::Vector(path) => {
            let p = load_vector(path)?;
            require_dim(&shape, p.dim())?;
            (
                classical::conditional_information(&p, &shape).map_err(CliError::Input)?,
                describe(path),
            )
        }
        Source::Matrix(path) => {
            let rho = load_density(path, tol)?;
            require_dim(&shape, rho.dim())?;
            (
                qudit_correlations::conditional_quantum_information(&rho, &shape)
                    .map_err(CliError::Input)?,
                describe(path),
            )
        }
    };
    let report = MeasureReport {
        input: Some(descriptor),
        shape: Some(shape.to_string()),
        conditional: Some(in_units(value, args.bits)),
        ..Default::default()
    };
    emit_scalar(value, args.bits, format, &report);
    Ok(0)
}

fn reduce(args: ReduceArgs) -> CliResult<i32> {
    let tol = resolve_tolerance(args.tolerance)?;
    let shape = parse_shape(&args.shape)?;
    let keep = parse_axes(&args.keep)?;
    let spec = MarginalSpec::new(shape.clone(), keep).map_err(|e| CliError::Usage(e.to_string()))?;
    let rho = load_density(&args.matrix, tol)?;
    require_dim(&shape, rho.dim())?;
    let reduced = artificial_reduce(&rho, &spec).map_err(CliError::Input)?;
    write_doc(&MatrixDocument::from_density(&reduced), args.output.as_deref())?;
    Ok(0)
}

fn ppt(args: PptArgs) -> CliResult<i32> {
    let tol = resolve_tolerance(args.tolerance)?;
    let format = parse_report(args.report.as_deref())?.unwrap_or(ReportFormat::Text);
    let shape = parse_shape_arity(&args.shape, 2)?;
    let rho = load_density(&args.matrix, tol)?;
    require_dim(&shape, rho.dim())?;
    let verdict = is_ppt(&rho, &shape).map_err(CliError::Input)?;
    let report = MeasureReport {
        input: Some(describe(&args.matrix)),
        shape: Some(shape.to_string()),
        min_pt_eigenvalue: Some(verdict.min_pt_eigenvalue),
        ppt: Some(verdict.ppt),
        conclusive: Some(verdict.conclusive),
        ..Default::default()
    };
    print!("{}", io::write_report(&report, format));
    Ok(if verdict.ppt { 0 } else { 3 })
}

fn pad(args: PadArgs) -> CliResult<i32> {
    let tol = resolve_tolerance(args.tolerance)?;
    let rho = load_density(&args.matrix, tol)?;
    let padded = embed_pad(&rho, args.k);
    write_doc(&MatrixDocument::from_density(&padded), args.output.as_deref())?;
    Ok(0)
}

fn gibbs_scan(args: GibbsScanArgs) -> CliResult<i32> {
    let tol = resolve_tolerance(args.tolerance)?;
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !args.beta_min.is_finite() || !args.beta_max.is_finite() {
        return Err(CliError::Usage("beta bounds must be finite".into()));
    }
    let shape = match &args.shape {
        Some(text) => Some(parse_shape_arity(text, 2)?),
        None => None,
    };
    let h = load_hermitian(&args.hamiltonian, tol)?;
    if let Some(s) = &shape {
        require_dim(s, h.dim())?;
    }

    let betas: Vec<f64> = if args.steps == 1 {
        vec![args.beta_min]
    } else {
        let step = (args.beta_max - args.beta_min) / (args.steps - 1) as f64;
        (0..args.steps)
            .map(|i| args.beta_min + step * i as f64)
            .collect()
    };

    let mut header = String::from("beta,energy,entropy,free_energy,log_partition");
    if shape.is_some() {
        header.push_str(",mutual_information");
    }
    println!("{header}");
    for beta in betas {
        let report = thermo_report(&h, beta, shape.as_ref()).map_err(CliError::Input)?;
        let mut row = vec![
            io::format_sig(report.beta, 12),
            io::format_sig(report.energy, 12),
            io::format_sig(report.entropy, 12),
            report.free_energy.map_or(String::new(), |f| io::format_sig(f, 12)),
            io::format_sig(report.log_partition, 12),
        ];
        if let Some(i_q) = report.mutual_information {
            row.push(io::format_sig(i_q, 12));
        }
        println!("{}", row.join(","));
    }
    Ok(0)
}

fn check_inequality(args: CheckInequalityArgs) -> CliResult<i32> {
    let tol = resolve_tolerance(args.tolerance)?;
    let format = parse_report(args.report.as_deref())?;
    let rho = load_density(&args.matrix, tol)?;
    let h = load_hermitian(&args.hamiltonian, tol)?;
    if rho.dim() != h.dim() {
        return Err(CliError::Usage(format!(
            "state dimension {} does not match generator dimension {}",
            rho.dim(),
            h.dim()
        )));
    }
    let slack = check_energy_entropy_inequality(&rho, &h).map_err(CliError::Input)?;
    match format {
        Some(fmt) => {
            let report = MeasureReport {
                input: Some(describe(&args.matrix)),
                slack: Some(slack),
                ..Default::default()
            };
            print!("{}", io::write_report(&report, fmt));
        }
        None => println!("{slack:.12}"),
    }
    Ok(if slack >= -tolerance::STATE { 0 } else { 4 })
}

enum Source<'a> {
    Vector(&'a Path),
    Matrix(&'a Path),
}

fn pick_source<'a>(
    input: &'a Option<PathBuf>,
    matrix: &'a Option<PathBuf>,
) -> CliResult<Source<'a>> {
    match (input, matrix) {
        (Some(path), None) => Ok(Source::Vector(path)),
        (None, Some(path)) => Ok(Source::Matrix(path)),
        _ => Err(CliError::Usage(
            "pass exactly one of --input (probability vector) or --matrix (density matrix)".into(),
        )),
    }
}

fn describe(path: &Path) -> String {
    path.display().to_string()
}

fn parse_shape(text: &str) -> CliResult<FactorShape> {
    text.parse::<FactorShape>()
        .map_err(|e| CliError::Usage(format!("--shape {text}: {e}")))
}

fn parse_shape_arity(text: &str, arity: usize) -> CliResult<FactorShape> {
    let shape = parse_shape(text)?;
    if shape.arity() != arity {
        return Err(CliError::Usage(format!(
            "--shape {text} has {} factors, this subcommand needs exactly {arity}",
            shape.arity()
        )));
    }
    Ok(shape)
}

fn parse_axes(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("--keep: invalid axis `{}`", part.trim())))
        })
        .collect()
}

fn require_dim(shape: &FactorShape, dim: usize) -> CliResult<()> {
    if shape.dim() != dim {
        return Err(CliError::Usage(format!(
            "shape {} has product {}, but the input has dimension {dim}",
            shape,
            shape.dim()
        )));
    }
    Ok(())
}

fn resolve_tolerance(tolerance: Option<f64>) -> CliResult<f64> {
    match tolerance {
        None => Ok(tolerance::STATE),
        Some(t) if (1e-12..=1e-6).contains(&t) => Ok(t),
        Some(t) => Err(CliError::Usage(format!(
            "--tolerance {t:e} is outside [1e-12, 1e-6]"
        ))),
    }
}

fn parse_report(report: Option<&str>) -> CliResult<Option<ReportFormat>> {
    report
        .map(|text| {
            text.parse::<ReportFormat>()
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .transpose()
}

fn load_vector(path: &Path) -> CliResult<ProbVector> {
    io::load_prob_vector(path).map_err(CliError::Input)
}

fn load_density(path: &Path, tol: f64) -> CliResult<DensityMatrix> {
    io::load_density(path, tol).map_err(CliError::Input)
}

fn load_hermitian(path: &Path, tol: f64) -> CliResult<HermitianObservable> {
    io::load_hermitian(path, tol).map_err(CliError::Input)
}

fn in_units(value: f64, bits: bool) -> f64 {
    if bits {
        value / LN_2
    } else {
        value
    }
}

fn emit_scalar(value: f64, bits: bool, format: Option<ReportFormat>, report: &MeasureReport) {
    match format {
        Some(fmt) => print!("{}", io::write_report(report, fmt)),
        None => println!("{:.12}", in_units(value, bits)),
    }
}

fn write_doc(doc: &MatrixDocument, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => io::write_matrix(path, doc).map_err(CliError::Input),
        None => {
            println!("{}", doc.to_json());
            Ok(())
        }
    }
}
