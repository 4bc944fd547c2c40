use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};

use super::{born_tables, sample_tables, trial_seed};
use crate::error::{Error, Result};
use crate::estimator::{estimate_from_counts, EstimatorArtifact};
use crate::quantum::{expectation_value, DensityMatrix, Observable};
use crate::scalar::Scalar;
use crate::schemes::MeasurementScheme;
use crate::solver::{extract_estimator, solve_saddle, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub estimate: f64,
    pub hit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub trials: usize,
    pub hits: usize,
    pub coverage: f64,
    pub epsilon: f64,
    /// One-sided 99% Clopper-Pearson lower bound on the coverage.
    pub binomial_lower_bound: f64,
    pub risk: f64,
    pub true_value: f64,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl CoverageReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial_index,estimate,hit\n");
        for r in &self.records {
            out.push_str(&format!("{},{:e},{}\n", r.trial_index, r.estimate, u8::from(r.hit)));
        }
        out
    }
}

/// Lower end of the one-sided Clopper-Pearson interval for a binomial
/// proportion at the given confidence.
pub fn clopper_pearson_lower(hits: usize, trials: usize, confidence: f64) -> f64 {
    if hits == 0 || trials == 0 {
        return 0.0;
    }
    let beta = Beta::new(hits as f64, (trials - hits + 1) as f64).expect("positive shape");
    beta.inverse_cdf(1.0 - confidence)
}

/// Builds the estimator for `(functional, scheme, epsilon)` and checks its
/// interval against `trials` datasets simulated from `true_state`.
pub fn coverage_test<T: Scalar>(
    functional: &Observable<T>,
    scheme: &MeasurementScheme<T>,
    epsilon: f64,
    true_state: &DensityMatrix<T>,
    trials: usize,
    seed: u64,
) -> Result<CoverageReport> {
    let config = SolverConfig {
        seed,
        ..SolverConfig::with_epsilon(epsilon)
    };
    let solution = solve_saddle(functional, scheme, &config)?;
    let artifact = extract_estimator(&solution, scheme, functional, epsilon)?;
    coverage_with_artifact(&artifact, functional, scheme, true_state, trials, seed)
}

pub fn coverage_with_artifact<T: Scalar>(
    artifact: &EstimatorArtifact,
    functional: &Observable<T>,
    scheme: &MeasurementScheme<T>,
    true_state: &DensityMatrix<T>,
    trials: usize,
    seed: u64,
) -> Result<CoverageReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    artifact.check_scheme(scheme)?;
    let true_value = expectation_value(functional, true_state)?.as_f64();
    let tables = born_tables(true_state, scheme)?;
    let reps = scheme.repetitions();
    let records = (0..trials)
        .into_par_iter()
        .map(|i| {
            let data = sample_tables(&tables, reps, trial_seed(seed, i as u64))?;
            let estimate = estimate_from_counts(artifact, &data);
            Ok(TrialRecord {
                trial_index: i,
                estimate,
                hit: (estimate - true_value).abs() <= artifact.risk,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hits = records.iter().filter(|r| r.hit).count();
    Ok(CoverageReport {
        trials,
        hits,
        coverage: hits as f64 / trials as f64,
        epsilon: artifact.epsilon,
        binomial_lower_bound: clopper_pearson_lower(hits, trials, 0.99),
        risk: artifact.risk,
        true_value,
        records,
    })
}
