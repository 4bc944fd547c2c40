//! Applying an affine estimator artifact to outcome counts.

mod artifact;
mod dataset;

pub use artifact::{serialize_roundtrip, EstimatorArtifact};
pub use dataset::OutcomeDataset;


use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Validation {
    /// Any per-setting total other than the artifact's repetitions is an
    /// error.
    #[default]
    Strict,
    /// Total mismatches only mark the report's risk as nominal.
    Tolerant,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationOutcome {
    /// Settings whose totals differ from the artifact, with the observed
    /// total.
    pub mismatched_totals: Vec<(usize, u64)>,
}

impl ValidationOutcome {
    pub fn is_exact(&self) -> bool {
        self.mismatched_totals.is_empty()
    }

    pub fn warnings(&self, artifact: &EstimatorArtifact) -> Vec<String> {
        self.mismatched_totals
            .iter()
            .map(|&(l, n)| {
                format!(
                    "setting {l} ({}): {n} shots recorded, estimator built for {}",
                    artifact.labels[l], artifact.repetitions[l]
                )
            })
            .collect()
    }
}

pub fn validate_dataset(
    artifact: &EstimatorArtifact,
    data: &OutcomeDataset,
    mode: Validation,
) -> Result<ValidationOutcome> {
    if data.num_settings() != artifact.coefficients.len() {
        return Err(Error::DatasetMismatch(format!(
            "{} settings in data, {} in estimator",
            data.num_settings(),
            artifact.coefficients.len()
        )));
    }
    let mut out = ValidationOutcome::default();
    for (l, (c, a)) in data.counts().iter().zip(&artifact.coefficients).enumerate() {
        if c.len() != a.len() {
            return Err(Error::DatasetMismatch(format!(
                "setting {l} ({}): {} outcomes in data, {} in estimator",
                artifact.labels[l],
                c.len(),
                a.len()
            )));
        }
        let total: u64 = c.iter().sum();
        if total != artifact.repetitions[l] as u64 {
            if mode == Validation::Strict {
                return Err(Error::DatasetMismatch(format!(
                    "setting {l} ({}): {total} shots recorded, estimator built for {}",
                    artifact.labels[l], artifact.repetitions[l]
                )));
            }
            out.mismatched_totals.push((l, total));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub risk: f64,
    pub confidence_level: f64,
    pub interval: [f64; 2],
    /// Whether `clamped_estimate` was requested. The interval always refers
    /// to the raw estimate.
    pub clamped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clamped_estimate: Option<f64>,
    /// Set when shot totals differ from the estimator's design, so the
    /// confidence statement does not strictly apply.
    pub nominal_risk: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ApplyOptions {
    pub validation: Validation,
    /// Also report the estimate clamped into this range.
    pub clamp: Option<(f64, f64)>,
}

/// `sum_l <a^(l), n^(l)> + c` with no validation.
pub fn estimate_from_counts(artifact: &EstimatorArtifact, data: &OutcomeDataset) -> f64 {
    artifact
        .coefficients
        .iter()
        .zip(data.counts())
        .fold(artifact.constant, |acc, (a, n)| {
            acc + a.iter().zip(n).map(|(&ak, &nk)| ak * nk as f64).sum::<f64>()
        })
}

/// Frequency form `sum_l R_l <a^(l), f^(l)> + c` with `R_l` the observed
/// totals.
pub fn estimate_from_frequencies(artifact: &EstimatorArtifact, data: &OutcomeDataset) -> f64 {
    let totals = data.totals();
    artifact
        .coefficients
        .iter()
        .zip(data.frequencies())
        .zip(totals)
        .fold(artifact.constant, |acc, ((a, f), r)| {
            acc + r as f64 * a.iter().zip(&f).map(|(&ak, &fk)| ak * fk).sum::<f64>()
        })
}

pub fn apply_estimator(
    artifact: &EstimatorArtifact,
    data: &OutcomeDataset,
    options: &ApplyOptions,
) -> Result<EstimateReport> {
    let checked = validate_dataset(artifact, data, options.validation)?;
    let estimate = estimate_from_counts(artifact, data);
    let risk = artifact.risk;
    Ok(EstimateReport {
        estimate,
        risk,
        confidence_level: 1.0 - artifact.epsilon,
        interval: [estimate - risk, estimate + risk],
        clamped: options.clamp.is_some(),
        clamped_estimate: options.clamp.map(|(lo, hi)| estimate.clamp(lo, hi)),
        nominal_risk: !checked.is_exact(),
        warnings: checked.warnings(artifact),
    })
}
