use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{dfe_baseline, mle_baseline, sample_outcomes};
use crate::error::{Error, Result};
use crate::estimator::{apply_estimator, ApplyOptions};
use crate::quantum::{expectation_value, DensityMatrix, PureState};
use crate::scalar::Scalar;
use crate::schemes::MeasurementScheme;
use crate::solver::{extract_estimator, solve_saddle, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Minimax,
    Dfe,
    Mle,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "minimax" => Ok(Method::Minimax),
            "dfe" => Ok(Method::Dfe),
            "mle" => Ok(Method::Mle),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub epsilon: f64,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub bootstrap_b: usize,
    pub gap_tol: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.05,
            seed: 0,
            methods: vec![Method::Minimax, Method::Dfe, Method::Mle],
            bootstrap_b: 200,
            gap_tol: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchEntry {
    pub method: Method,
    pub estimate: f64,
    pub risk: f64,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub epsilon: f64,
    pub seed: u64,
    pub true_value: f64,
    pub total_shots: usize,
    pub methods: Vec<BenchEntry>,
}

/// Fidelity with `target` estimated by each method from data simulated on
/// `true_state`. Minimax and MLE share one dataset from `scheme`; DFE gets
/// the same number of settings and the mean shots per setting.
pub fn run_benchmark<T: Scalar>(
    target: &PureState<T>,
    scheme: &MeasurementScheme<T>,
    true_state: &DensityMatrix<T>,
    config: &BenchConfig,
) -> Result<BenchReport> {
    if config.methods.is_empty() {
        return Err(Error::InvalidParameter("no methods requested".into()));
    }
    let functional = target.fidelity_observable();
    let true_value = expectation_value(&functional, true_state)?.as_f64();
    let data = sample_outcomes(true_state, scheme, config.seed)?;
    let mut methods = Vec::with_capacity(config.methods.len());
    for &method in &config.methods {
        let start = Instant::now();
        let (estimate, risk) = match method {
            Method::Minimax => {
                let solver = SolverConfig {
                    gap_tol: config.gap_tol,
                    seed: config.seed,
                    ..SolverConfig::with_epsilon(config.epsilon)
                };
                let solution = solve_saddle(&functional, scheme, &solver)?;
                let artifact = extract_estimator(&solution, scheme, &functional, config.epsilon)?;
                let report = apply_estimator(&artifact, &data, &ApplyOptions::default())?;
                (report.estimate, report.risk)
            }
            Method::Dfe => {
                let settings = scheme.num_settings();
                let shots = scheme.total_shots().div_ceil(settings);
                let r = dfe_baseline(target, settings, shots, config.seed, true_state, config.epsilon)?;
                (r.estimate, r.risk_estimate)
            }
            Method::Mle => {
                let r = mle_baseline(
                    scheme,
                    &data,
                    &functional,
                    config.epsilon,
                    config.bootstrap_b,
                    config.seed,
                )?;
                (r.estimate, r.risk_estimate)
            }
        };
        methods.push(BenchEntry {
            method,
            estimate,
            risk,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(BenchReport {
        epsilon: config.epsilon,
        seed: config.seed,
        true_value,
        total_shots: scheme.total_shots(),
        methods,
    })
}
