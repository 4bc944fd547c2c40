use rayon::prelude::*;
use serde_json::json;

use super::{born_tables, sample_tables, trial_seed, BaselineMethod, BaselineResult};
use crate::error::{Error, Result};
use crate::estimator::OutcomeDataset;
use crate::quantum::{cr, expectation_value, identity, trace_product_re, ComplexMatrix, DensityMatrix, Observable};
use crate::scalar::Scalar;
use crate::schemes::MeasurementScheme;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleOptions {
    /// Weight of the likelihood operator in `(I + w R) / (1 + w)`.
    pub dilution: f64,
    pub grad_tol: f64,
    pub max_iters: usize,
    pub prob_floor: f64,
}

impl Default for MleOptions {
    fn default() -> Self {
        Self {
            dilution: 0.5,
            grad_tol: 1e-7,
            max_iters: 5000,
            prob_floor: 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MleFit<T: Scalar> {
    pub state: DensityMatrix<T>,
    pub iterations: usize,
    pub grad_norm: f64,
}

fn check_shape<T: Scalar>(scheme: &MeasurementScheme<T>, data: &OutcomeDataset) -> Result<()> {
    let shape: Vec<usize> = data.counts().iter().map(Vec::len).collect();
    if shape != scheme.outcome_counts() {
        return Err(Error::DatasetMismatch("data shape differs from the scheme".into()));
    }
    if data.totals().iter().all(|&t| t == 0) {
        return Err(Error::DatasetMismatch("no shots recorded".into()));
    }
    Ok(())
}

/// Diluted `R rho R` iteration for the maximum-likelihood state.
pub fn mle_reconstruct<T: Scalar>(
    scheme: &MeasurementScheme<T>,
    data: &OutcomeDataset,
    options: &MleOptions,
) -> Result<MleFit<T>> {
    check_shape(scheme, data)?;
    mle_from(scheme, data, options, DensityMatrix::maximally_mixed(scheme.dim()).into_matrix())
}

fn mle_from<T: Scalar>(
    scheme: &MeasurementScheme<T>,
    data: &OutcomeDataset,
    options: &MleOptions,
    start: ComplexMatrix<T>,
) -> Result<MleFit<T>> {
    let d = scheme.dim();
    let total: u64 = data.totals().iter().sum();
    let inv_total = T::one() / T::lit(total as f64);
    let floor = T::lit(options.prob_floor);
    let w = T::lit(options.dilution);
    let id = identity::<T>(d);
    let mut rho = start;
    let mut grad_norm = f64::INFINITY;
    let mut iterations = 0;
    for it in 1..=options.max_iters {
        iterations = it;
        let mut r = ComplexMatrix::<T>::zeros(d, d);
        for (povm, counts) in scheme.povms().iter().zip(data.counts()) {
            for (e, &n) in povm.effects().iter().zip(counts) {
                if n == 0 {
                    continue;
                }
                let p = trace_product_re(e, &rho);
                let p = if p < floor { floor } else { p };
                r += e * cr(T::lit(n as f64) * inv_total / p);
            }
        }
        let r_rho = &r * &rho;
        let lambda = r_rho.trace().re;
        grad_norm = (&r_rho - &rho * cr(lambda)).norm().as_f64();
        if grad_norm < options.grad_tol {
            break;
        }
        let step = (&id + &r * cr(w)) * cr(T::one() / (T::one() + w));
        let next = &step * &rho * &step;
        let tr = next.trace().re;
        rho = next * cr(T::one() / tr);
        rho = (&rho + rho.adjoint()) * cr(T::lit(0.5));
    }
    Ok(MleFit {
        state: DensityMatrix::from_matrix_unchecked(rho),
        iterations,
        grad_norm,
    })
}

/// MLE point estimate of `tr(O rho)` with a parametric-bootstrap risk: the
/// `1 - epsilon` quantile of `|F_b - F|` over `bootstrap_b` datasets
/// resampled from the fitted state. A heuristic, not a certified interval.
pub fn mle_baseline<T: Scalar>(
    scheme: &MeasurementScheme<T>,
    data: &OutcomeDataset,
    functional: &Observable<T>,
    epsilon: f64,
    bootstrap_b: usize,
    seed: u64,
) -> Result<BaselineResult> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside (0, 1)")));
    }
    if bootstrap_b == 0 {
        return Err(Error::InvalidParameter("bootstrap size must be positive".into()));
    }
    if functional.dim() != scheme.dim() {
        return Err(Error::DimensionMismatch {
            expected: scheme.dim(),
            found: functional.dim(),
        });
    }
    let options = MleOptions::default();
    let fit = mle_reconstruct(scheme, data, &options)?;
    let estimate = expectation_value(functional, &fit.state)?.as_f64();
    let tables = born_tables(&fit.state, scheme)?;
    let reps: Vec<usize> = data.totals().iter().map(|&t| t as usize).collect();
    let mut deviations = (0..bootstrap_b)
        .into_par_iter()
        .map(|b| {
            let resampled = sample_tables(&tables, &reps, trial_seed(seed, b as u64))?;
            let refit = mle_from(scheme, &resampled, &options, fit.state.matrix().clone())?;
            Ok((expectation_value(functional, &refit.state)?.as_f64() - estimate).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    deviations.sort_by(f64::total_cmp);
    let idx = (((1.0 - epsilon) * bootstrap_b as f64).ceil() as usize).clamp(1, bootstrap_b) - 1;
    let mut detail = serde_json::Map::new();
    detail.insert("algorithm".into(), json!("diluted R-rho-R fixed point"));
    detail.insert("dilution".into(), json!(options.dilution));
    detail.insert("grad_tol".into(), json!(options.grad_tol));
    detail.insert("max_iters".into(), json!(options.max_iters));
    detail.insert("iterations".into(), json!(fit.iterations));
    detail.insert("grad_norm".into(), json!(fit.grad_norm));
    detail.insert("bootstrap_b".into(), json!(bootstrap_b));
    Ok(BaselineResult {
        method: BaselineMethod::Mle,
        estimate,
        risk_estimate: deviations[idx],
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{random_pure_state, PauliString};
    use crate::schemes::{pauli_povm, Granularity};
    use crate::simulate::sample_outcomes;

    #[test]
    fn complete_pauli_data_recovers_state() {
        let truth = random_pure_state::<f64>(2, 11).unwrap();
        let paulis: Vec<PauliString> =
            PauliString::all(2).into_iter().filter(|p| !p.is_identity()).collect();
        let povms = paulis
            .iter()
            .map(|p| pauli_povm(p, Granularity::Sign).unwrap())
            .collect();
        let labels = paulis.iter().map(|p| p.to_string()).collect();
        let scheme = MeasurementScheme::new(povms, vec![100_000; 15], labels).unwrap();
        let data = sample_outcomes(&truth.density(), &scheme, 3).unwrap();
        let fit = mle_reconstruct(&scheme, &data, &MleOptions::default()).unwrap();
        let f = expectation_value(&truth.fidelity_observable(), &fit.state).unwrap();
        assert!(f >= 0.999, "fidelity {f}");
    }
}
