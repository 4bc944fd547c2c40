use super::SaddleSolution;
use crate::error::{Error, Result};
use crate::estimator::EstimatorArtifact;
use crate::quantum::Observable;
use crate::scalar::Scalar;
use crate::schemes::{scheme_digest, MeasurementScheme};

/// Estimator with coefficients `phi*` and constant
/// `(tr(O chi1*) + tr(O chi2*)) / 2`. Unconverged solutions are rejected.
pub fn extract_estimator<T: Scalar>(
    solution: &SaddleSolution<T>,
    scheme: &MeasurementScheme<T>,
    functional: &Observable<T>,
    epsilon: f64,
) -> Result<EstimatorArtifact> {
    if !solution.converged {
        return Err(Error::NotConverged {
            gap: solution.gap_certificate.as_f64(),
            tol: solution.gap_tol,
        });
    }
    extract_estimator_forced(solution, scheme, functional, epsilon)
}

/// As [`extract_estimator`] but accepts an unconverged solution; its risk is
/// still a valid (looser) bound.
pub fn extract_estimator_forced<T: Scalar>(
    solution: &SaddleSolution<T>,
    scheme: &MeasurementScheme<T>,
    functional: &Observable<T>,
    epsilon: f64,
) -> Result<EstimatorArtifact> {
    if functional.dim() != scheme.dim() || solution.chi1.dim() != scheme.dim() {
        return Err(Error::DimensionMismatch {
            expected: scheme.dim(),
            found: functional.dim(),
        });
    }
    let shape: Vec<usize> = solution.phi.iter().map(Vec::len).collect();
    if shape != scheme.outcome_counts() {
        return Err(Error::InvalidParameter(
            "solution does not belong to this scheme".into(),
        ));
    }
    if (epsilon - solution.epsilon).abs() > 1e-15 {
        return Err(Error::InvalidParameter(format!(
            "solution built for epsilon {}, not {epsilon}",
            solution.epsilon
        )));
    }
    let artifact = EstimatorArtifact {
        scheme_digest: scheme_digest(scheme),
        epsilon,
        risk: solution.risk.as_f64(),
        constant: solution.constant.as_f64(),
        coefficients: solution
            .phi
            .iter()
            .map(|v| v.iter().map(|x| x.as_f64()).collect())
            .collect(),
        labels: scheme.labels().to_vec(),
        repetitions: scheme.repetitions().to_vec(),
        functional_label: String::new(),
        granularity: scheme.granularity(),
        gap: solution.gap_certificate.as_f64(),
    };
    artifact.validate()?;
    Ok(artifact)
}
