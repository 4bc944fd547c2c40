use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const OPERATOR_FORMAT: &str = "\
Operator arguments take a JSON file or an inline name.
  File: {\"dim\": d, \"kind\": \"pure\"|\"density\"|\"observable\", \"data\": ...}
        pure: data = [[re, im], ...] (d amplitudes)
        density/observable: data = [[[re, im], ...], ...] (d x d, row-major)
  Names: ghz(n), w(n), cluster(n), werner(p), basis(index,dim)
  Observables additionally accept a Pauli string (e.g. XZ, -YY) or swap.";

const SCHEME_FORMAT: &str = "\
Scheme files are JSON, either
  {\"dim\": d, \"settings\": [{\"label\": s, \"repetitions\": R, \"effects\": [matrix, ...]}, ...]}
or the compact Pauli form
  {\"paulis\": [\"XX\", ...], \"granularity\": \"sign\"|\"eigenvector\", \"repetitions\": R | [R_1, ...]}";

#[derive(Debug, Parser)]
#[command(name = "mmfid", version, about = "Minimax affine estimators for fidelity and observables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Build(BuildArgs),
    Estimate(EstimateArgs),
    Simulate(SimulateArgs),
    Coverage(CoverageArgs),
    Bench(BenchArgs),
    Schemes(SchemesArgs),
}

/// Solve the saddle-point program and write an estimator artifact.
#[derive(Debug, Args)]
#[command(after_long_help = build_help())]
pub struct BuildArgs {
    /// Target state; the functional is its fidelity.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub scheme: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Estimate this observable instead of the target fidelity.
    #[arg(long)]
    pub observable: Option<String>,
    #[arg(long, default_value_t = 1e-4)]
    pub gap_tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Diagnostics CSV path; defaults to the artifact path with extension
    /// `diagnostics.csv`.
    #[arg(long)]
    pub diagnostics: Option<PathBuf>,
    /// Write the artifact even when the gap tolerance was not met.
    #[arg(long)]
    pub force: bool,
}

fn build_help() -> String {
    format!(
        "{OPERATOR_FORMAT}\n\n{SCHEME_FORMAT}\n\n\
Artifact JSON: {{\"scheme_digest\", \"epsilon\", \"risk\", \"constant\", \"coefficients\": [[...], ...], \
\"labels\", \"repetitions\", \"functional_label\", \"granularity\", \"gap\"}}.\n\
Diagnostics CSV: iteration,alpha,objective_lower,objective_upper,gap,inner_iterations.\n\
Exit status 2 when the certified gap exceeds --gap-tol (diagnostics are still written)."
    )
}

/// Apply an estimator artifact to outcome counts.
#[derive(Debug, Args)]
#[command(after_long_help = "\
Data CSV: header setting_index,outcome_index,count (0-based, scheme order); absent cells count zero.\n\
Stdout: one line `estimate risk lo hi confidence`, space separated, '.' decimal point.\n\
A human-readable summary and any warnings go to stderr.")]
pub struct EstimateArgs {
    #[arg(long)]
    pub estimator: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    /// Reject data whose per-setting totals differ from the design (default).
    #[arg(long, conflicts_with = "tolerant")]
    pub strict: bool,
    /// Accept mismatched totals and mark the risk as nominal.
    #[arg(long)]
    pub tolerant: bool,
    /// Also report the estimate clamped to [0, 1].
    #[arg(long)]
    pub clamp: bool,
    /// Verify the artifact's scheme digest against this scheme file.
    #[arg(long)]
    pub scheme: Option<PathBuf>,
}

/// Draw Born-rule outcomes for every setting of a scheme.
#[derive(Debug, Args)]
#[command(after_long_help = "Writes CSV setting_index,outcome_index,count; stdout when --out is omitted.")]
pub struct SimulateArgs {
    #[arg(long)]
    pub state: String,
    #[arg(long)]
    pub scheme: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Depolarize the state with this weight first.
    #[arg(long)]
    pub depolarize: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Monte-Carlo check of the estimator's confidence statement.
#[derive(Debug, Args)]
#[command(after_long_help = "\
Prints a JSON report {trials, hits, coverage, epsilon, binomial_lower_bound, risk, true_value};\n\
binomial_lower_bound is the one-sided 99% Clopper-Pearson bound.\n\
--csv writes per-trial rows trial_index,estimate,hit.")]
pub struct CoverageArgs {
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub observable: Option<String>,
    #[arg(long)]
    pub scheme: PathBuf,
    #[arg(long)]
    pub true_state: String,
    #[arg(long)]
    pub depolarize: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Compare the minimax estimator with DFE and MLE baselines.
#[derive(Debug, Args)]
#[command(after_long_help = "\
Prints a JSON report {epsilon, seed, true_value, total_shots, methods: [{method, estimate, risk, wall_time_ms}]}.\n\
DFE draws as many Pauli settings as the scheme has, with the scheme's mean shots per setting.")]
pub struct BenchArgs {
    /// Comma-separated subset of minimax,dfe,mle.
    #[arg(long, default_value = "minimax,dfe,mle", value_delimiter = ',')]
    pub compare: Vec<String>,
    #[arg(long)]
    pub target: String,
    #[arg(long)]
    pub scheme: PathBuf,
    #[arg(long)]
    pub true_state: String,
    #[arg(long)]
    pub depolarize: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub bootstrap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeKind {
    PauliDfe,
    Stabilizer,
    TargetBasis,
    RandomPovm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StabilizerModeArg {
    Full,
    Uniform,
    Subset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GranularityArg {
    Eigenvector,
    Sign,
}

/// Construct a measurement scheme file.
#[derive(Debug, Args)]
#[command(after_long_help = "\
pauli-dfe:    --target --fraction --shots [--granularity]\n\
stabilizer:   --generators XX,ZZ --mode full|uniform|subset --shots [--samples --seed | --subset 0,1]\n\
target-basis: --target --shots\n\
random-povm:  --qubits --settings --outcomes --shots --seed\n\
Output is the full scheme JSON; stdout when --out is omitted.")]
pub struct SchemesArgs {
    #[arg(long, value_enum)]
    pub kind: SchemeKind,
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub fraction: Option<f64>,
    #[arg(long, value_enum, default_value_t = GranularityArg::Eigenvector)]
    pub granularity: GranularityArg,
    #[arg(long)]
    pub generators: Option<String>,
    #[arg(long, value_enum, default_value_t = StabilizerModeArg::Full)]
    pub mode: StabilizerModeArg,
    /// Number of uniform draws in `uniform` mode.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub subset: Vec<usize>,
    #[arg(long)]
    pub qubits: Option<usize>,
    #[arg(long)]
    pub settings: Option<usize>,
    #[arg(long)]
    pub outcomes: Option<usize>,
    #[arg(long)]
    pub shots: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
