use std::fs;
use std::path::{Path, PathBuf};

use minimax_fidelity::estimator::{apply_estimator, ApplyOptions, EstimatorArtifact, OutcomeDataset, Validation};
use minimax_fidelity::quantum::{
    build_observable, depolarize, named_state, DensityMatrix, NamedState, Observable, ObservableSpec,
    OperatorFile, PureState, StateValue,
};
use minimax_fidelity::schemes::{
    dfe_weighted_scheme_with, random_rank1_scheme, stabilizer_scheme, target_basis_scheme, Granularity,
    MeasurementScheme, SchemeFile, StabilizerGroupSpec, StabilizerMode,
};
use minimax_fidelity::simulate::{coverage_test, run_benchmark, sample_outcomes, BenchConfig, Method};
use minimax_fidelity::solver::{extract_estimator_forced, solve_saddle, SolverConfig};
use minimax_fidelity::Error;

use crate::args::*;

/// Failure carrying the process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::NotConverged { .. }) { 2 } else { 1 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e).into()
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: msg.into(),
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_operator(arg: &str) -> Result<OperatorFile, Failure> {
    let text = read(Path::new(arg))?;
    Ok(serde_json::from_str(&text)?)
}

fn is_file(arg: &str) -> bool {
    Path::new(arg).is_file()
}

fn load_state(arg: &str) -> Result<StateValue<f64>, Failure> {
    if is_file(arg) {
        return Ok(load_operator(arg)?.to_state_value()?);
    }
    let spec: NamedState<f64> = arg.parse()?;
    Ok(named_state(&spec)?)
}

fn load_pure(arg: &str) -> Result<PureState<f64>, Failure> {
    match load_state(arg)? {
        StateValue::Pure(p) => Ok(p),
        StateValue::Mixed(_) => Err(invalid(format!("{arg}: a pure target state is required"))),
    }
}

fn load_density(arg: &str, lambda: Option<f64>) -> Result<DensityMatrix<f64>, Failure> {
    let rho = load_state(arg)?.density();
    Ok(match lambda {
        Some(l) => depolarize(&rho, l)?,
        None => rho,
    })
}

fn load_observable(arg: &str) -> Result<Observable<f64>, Failure> {
    if is_file(arg) {
        return Ok(load_operator(arg)?.to_observable()?);
    }
    let spec: ObservableSpec<f64> = arg.parse()?;
    Ok(build_observable(&spec)?)
}

/// Functional from `--observable` or the fidelity with `--target`.
fn load_functional(target: Option<&str>, observable: Option<&str>) -> Result<(Observable<f64>, String), Failure> {
    match (observable, target) {
        (Some(o), _) => Ok((load_observable(o)?, format!("observable {o}"))),
        (None, Some(t)) => Ok((load_pure(t)?.fidelity_observable(), format!("fidelity {t}"))),
        (None, None) => Err(invalid("one of --target or --observable is required")),
    }
}

fn load_scheme(path: &Path) -> Result<MeasurementScheme<f64>, Failure> {
    let file: SchemeFile = serde_json::from_str(&read(path)?)?;
    Ok(file.to_scheme()?)
}

fn diagnostics_path(out: &Path) -> PathBuf {
    out.with_extension("diagnostics.csv")
}

pub fn build(args: &BuildArgs) -> Outcome {
    let (functional, label) = load_functional(args.target.as_deref(), args.observable.as_deref())?;
    let scheme = load_scheme(&args.scheme)?;
    let config = SolverConfig {
        gap_tol: args.gap_tol,
        seed: args.seed,
        ..SolverConfig::with_epsilon(args.epsilon)
    };
    let solution = solve_saddle(&functional, &scheme, &config)?;
    let diag = args.diagnostics.clone().unwrap_or_else(|| diagnostics_path(&args.out));
    fs::write(&diag, solution.diagnostics_csv())?;
    if !solution.converged && !args.force {
        return Err(Error::NotConverged {
            gap: solution.gap_certificate,
            tol: args.gap_tol,
        }
        .into());
    }
    let mut artifact = extract_estimator_forced(&solution, &scheme, &functional, args.epsilon)?;
    artifact.functional_label = label;
    fs::write(&args.out, artifact.to_json()? + "\n")?;
    eprintln!(
        "risk {} (gap {:.2e}) at confidence {}; wrote {} and {}",
        artifact.risk,
        artifact.gap,
        1.0 - artifact.epsilon,
        args.out.display(),
        diag.display()
    );
    if !solution.converged {
        return Err(Error::NotConverged {
            gap: solution.gap_certificate,
            tol: args.gap_tol,
        }
        .into());
    }
    Ok(())
}

pub fn estimate(args: &EstimateArgs) -> Outcome {
    let text = read(&args.estimator)?;
    let artifact = match &args.scheme {
        Some(s) => EstimatorArtifact::from_json_for_scheme(&text, &load_scheme(s)?)?,
        None => EstimatorArtifact::from_json(&text)?,
    };
    let data = OutcomeDataset::read_csv(read(&args.data)?.as_bytes(), &artifact.outcome_counts())?;
    let options = ApplyOptions {
        validation: if args.tolerant {
            Validation::Tolerant
        } else {
            Validation::Strict
        },
        clamp: args.clamp.then_some((0.0, 1.0)),
    };
    let report = apply_estimator(&artifact, &data, &options)?;
    println!(
        "{} {} {} {} {}",
        report.estimate, report.risk, report.interval[0], report.interval[1], report.confidence_level
    );
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "{}: {:.6} +- {:.6} with confidence {}{}",
        if artifact.functional_label.is_empty() {
            "estimate"
        } else {
            &artifact.functional_label
        },
        report.estimate,
        report.risk,
        report.confidence_level,
        if report.nominal_risk {
            " (nominal, shot counts differ)"
        } else {
            ""
        }
    );
    if let Some(c) = report.clamped_estimate {
        eprintln!("clamped estimate {c}");
    }
    Ok(())
}

pub fn simulate(args: &SimulateArgs) -> Outcome {
    let state = load_density(&args.state, args.depolarize)?;
    let scheme = load_scheme(&args.scheme)?;
    let data = sample_outcomes(&state, &scheme, args.seed)?;
    write_or_print(args.out.as_deref(), &data.to_csv_string()?)
}

pub fn coverage(args: &CoverageArgs) -> Outcome {
    let (functional, _) = load_functional(args.target.as_deref(), args.observable.as_deref())?;
    let scheme = load_scheme(&args.scheme)?;
    let truth = load_density(&args.true_state, args.depolarize)?;
    let report = coverage_test(&functional, &scheme, args.epsilon, &truth, args.trials, args.seed)?;
    if let Some(path) = &args.csv {
        fs::write(path, report.to_csv())?;
    }
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

pub fn bench(args: &BenchArgs) -> Outcome {
    let methods = args
        .compare
        .iter()
        .map(|m| m.parse::<Method>())
        .collect::<Result<Vec<_>, _>>()?;
    let target = load_pure(&args.target)?;
    let scheme = load_scheme(&args.scheme)?;
    let truth = load_density(&args.true_state, args.depolarize)?;
    let config = BenchConfig {
        epsilon: args.epsilon,
        seed: args.seed,
        methods,
        bootstrap_b: args.bootstrap,
        ..BenchConfig::default()
    };
    let report = run_benchmark(&target, &scheme, &truth, &config)?;
    write_or_print(args.out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    value.ok_or_else(|| invalid(format!("--{flag} is required for --kind {kind}")))
}

pub fn schemes(args: &SchemesArgs) -> Outcome {
    let scheme: MeasurementScheme<f64> = match args.kind {
        SchemeKind::PauliDfe => {
            let target = load_pure(args.target.as_deref().ok_or_else(|| invalid("--target is required for --kind pauli-dfe"))?)?;
            let fraction = need(args.fraction, "fraction", "pauli-dfe")?;
            let granularity = match args.granularity {
                GranularityArg::Eigenvector => Granularity::Eigenvector,
                GranularityArg::Sign => Granularity::Sign,
            };
            dfe_weighted_scheme_with(&target, fraction, args.shots, granularity)?
        }
        SchemeKind::Stabilizer => {
            let generators = args
                .generators
                .as_deref()
                .ok_or_else(|| invalid("--generators is required for --kind stabilizer"))?;
            let spec = StabilizerGroupSpec::parse_list(generators)?;
            let mode = match args.mode {
                StabilizerModeArg::Full => StabilizerMode::FullGroup,
                StabilizerModeArg::Uniform => StabilizerMode::UniformSample {
                    k: need(args.samples, "samples", "stabilizer --mode uniform")?,
                    seed: need(args.seed, "seed", "stabilizer --mode uniform")?,
                },
                StabilizerModeArg::Subset => {
                    if args.subset.is_empty() {
                        return Err(invalid("--subset is required for --mode subset"));
                    }
                    StabilizerMode::GeneratorSubset(args.subset.clone())
                }
            };
            stabilizer_scheme(&spec, &mode, args.shots)?
        }
        SchemeKind::TargetBasis => {
            let target = load_pure(args.target.as_deref().ok_or_else(|| invalid("--target is required for --kind target-basis"))?)?;
            target_basis_scheme(&target, args.shots)?
        }
        SchemeKind::RandomPovm => random_rank1_scheme(
            need(args.qubits, "qubits", "random-povm")?,
            need(args.settings, "settings", "random-povm")?,
            need(args.outcomes, "outcomes", "random-povm")?,
            args.shots,
            need(args.seed, "seed", "random-povm")?,
        )?,
    };
    let text = serde_json::to_string_pretty(&SchemeFile::from_scheme(&scheme))? + "\n";
    write_or_print(args.out.as_deref(), &text)
}
