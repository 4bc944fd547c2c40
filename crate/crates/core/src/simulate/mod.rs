//! Born-rule simulation, Monte-Carlo coverage checks and baseline
//! estimators (direct fidelity estimation, maximum likelihood).

mod bench;
mod coverage;
mod dfe;
mod mle;
mod ratio;

pub use bench::{run_benchmark, BenchConfig, BenchEntry, BenchReport, Method};
pub use coverage::{
    clopper_pearson_lower, coverage_test, coverage_with_artifact, CoverageReport, TrialRecord,
};
pub use dfe::dfe_baseline;
pub use mle::{mle_baseline, mle_reconstruct, MleFit, MleOptions};
pub use ratio::{interval_ratio, optimal_interval, AsymmetricInterval};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::OutcomeDataset;
use crate::quantum::{born_distribution, DensityMatrix};
use crate::scalar::Scalar;
use crate::schemes::MeasurementScheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineMethod {
    Dfe,
    Mle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineResult {
    pub method: BaselineMethod,
    pub estimate: f64,
    pub risk_estimate: f64,
    pub detail: serde_json::Map<String, serde_json::Value>,
}

/// Seed of trial `index` derived from a master seed.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Histogram of `n` draws from `probs` on stream `stream` of `seed`.
pub(crate) fn draw_counts(probs: &[f64], n: usize, seed: u64, stream: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; probs.len()];
    if n == 0 {
        return Ok(counts);
    }
    let dist = WeightedIndex::new(probs)
        .map_err(|e| Error::InvalidParameter(format!("outcome distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    for _ in 0..n {
        counts[dist.sample(&mut rng)] += 1;
    }
    Ok(counts)
}

/// `R_l` i.i.d. Born-rule outcomes per setting; setting `l` uses its own
/// stream of the seeded generator.
pub fn sample_outcomes<T: Scalar>(
    state: &DensityMatrix<T>,
    scheme: &MeasurementScheme<T>,
    seed: u64,
) -> Result<OutcomeDataset> {
    sample_with_repetitions(state, scheme, scheme.repetitions(), seed)
}

pub(crate) fn born_tables<T: Scalar>(
    state: &DensityMatrix<T>,
    scheme: &MeasurementScheme<T>,
) -> Result<Vec<Vec<f64>>> {
    if state.dim() != scheme.dim() {
        return Err(Error::DimensionMismatch {
            expected: scheme.dim(),
            found: state.dim(),
        });
    }
    scheme
        .povms()
        .iter()
        .map(|p| Ok(born_distribution(p, state)?.iter().map(|v| v.as_f64()).collect()))
        .collect()
}

fn sample_with_repetitions<T: Scalar>(
    state: &DensityMatrix<T>,
    scheme: &MeasurementScheme<T>,
    reps: &[usize],
    seed: u64,
) -> Result<OutcomeDataset> {
    let tables = born_tables(state, scheme)?;
    sample_tables(&tables, reps, seed)
}

pub(crate) fn sample_tables(tables: &[Vec<f64>], reps: &[usize], seed: u64) -> Result<OutcomeDataset> {
    let counts = tables
        .iter()
        .zip(reps)
        .enumerate()
        .map(|(l, (p, &r))| draw_counts(p, r, seed, l as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(OutcomeDataset::new(counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{PauliString, PureState};
    use crate::schemes::{pauli_povm, Granularity};

    fn z_scheme(reps: usize) -> MeasurementScheme<f64> {
        let z = pauli_povm(&"Z".parse::<PauliString>().unwrap(), Granularity::Sign).unwrap();
        MeasurementScheme::new(vec![z], vec![reps], vec!["Z".into()]).unwrap()
    }

    #[test]
    fn deterministic_outcome() {
        let one = PureState::<f64>::basis(1, 2).unwrap().density();
        let d = sample_outcomes(&one, &z_scheme(100), 3).unwrap();
        assert_eq!(d.counts(), &[vec![0, 100]]);
    }

    #[test]
    fn same_seed_same_data() {
        let plus = PureState::<f64>::normalized(nalgebra::DVector::from_element(2, crate::quantum::cr(1.0)))
            .unwrap()
            .density();
        let s = z_scheme(1000);
        assert_eq!(sample_outcomes(&plus, &s, 9).unwrap(), sample_outcomes(&plus, &s, 9).unwrap());
        assert_ne!(sample_outcomes(&plus, &s, 9).unwrap(), sample_outcomes(&plus, &s, 10).unwrap());
    }

    #[test]
    fn frequencies_follow_born_rule() {
        let psi = crate::quantum::random_pure_state::<f64>(1, 4).unwrap().density();
        let s = z_scheme(100_000);
        let p = born_tables(&psi, &s).unwrap()[0][0];
        let d = sample_outcomes(&psi, &s, 1).unwrap();
        let f = d.counts()[0][0] as f64 / 1e5;
        let sigma = (p * (1.0 - p) / 1e5).sqrt();
        assert!((f - p).abs() < 5.0 * sigma);
    }

    #[test]
    fn setting_streams_are_uncorrelated() {
        let n = 100_000;
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        b.set_stream(1);
        let xs: Vec<f64> = (0..n).map(|_| rand::Rng::random::<f64>(&mut a) - 0.5).collect();
        let ys: Vec<f64> = (0..n).map(|_| rand::Rng::random::<f64>(&mut b) - 0.5).collect();
        let corr = xs.iter().zip(&ys).map(|(x, y)| x * y).sum::<f64>() / n as f64 * 12.0;
        assert!(corr.abs() < 5.0 / (n as f64).sqrt());
    }
}
