use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{draw_counts, trial_seed, BaselineMethod, BaselineResult};
use crate::error::{Error, Result};
use crate::quantum::{trace_product_re, ComplexMatrix, DensityMatrix, PauliString, PureState};
use crate::scalar::Scalar;

/// Direct fidelity estimation with importance-sampled Pauli settings.
///
/// Non-identity Paulis `W` are drawn with probability
/// `tr(rho W)^2 / (d - 1)`, each is measured `shots_per_setting` times on
/// `true_state` recording only the `+-1` eigenvalue, and
/// `F = 1/d + (d-1)/d * mean_i (mean +-1)_i / tr(rho W_i)`. The risk is
/// a Chebyshev bound on the setting sampling plus a Hoeffding bound on the
/// shot noise, each at level `epsilon / 2`.
pub fn dfe_baseline<T: Scalar>(
    target: &PureState<T>,
    n_settings: usize,
    shots_per_setting: usize,
    seed: u64,
    true_state: &DensityMatrix<T>,
    epsilon: f64,
) -> Result<BaselineResult> {
    let d = target.dim();
    if !d.is_power_of_two() || d < 2 {
        return Err(Error::InvalidParameter(format!("dimension {d} is not a qubit register")));
    }
    if true_state.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: true_state.dim(),
        });
    }
    if n_settings == 0 || shots_per_setting == 0 {
        return Err(Error::InvalidParameter("settings and shots must be positive".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside (0, 1)")));
    }
    let n = d.trailing_zeros() as usize;
    let rho = target.projector();
    let sigma = true_state.matrix();
    let paulis: Vec<(PauliString, f64, f64)> = PauliString::all(n)
        .into_iter()
        .filter(|p| !p.is_identity())
        .map(|p| {
            let w: ComplexMatrix<T> = p.matrix();
            let chi_rho = trace_product_re(&w, &rho).as_f64();
            let chi_sigma = trace_product_re(&w, sigma).as_f64();
            (p, chi_rho, chi_sigma)
        })
        .collect();
    let weights: Vec<f64> = paulis.iter().map(|(_, c, _)| c * c).collect();
    let dist = WeightedIndex::new(&weights)
        .map_err(|_| Error::InvalidParameter("target has no Pauli weight".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shot_seed = trial_seed(seed, u64::MAX);

    let mut sum_x = 0.0;
    let mut sum_c2 = 0.0;
    let mut labels = Vec::with_capacity(n_settings);
    for i in 0..n_settings {
        let (p, chi_rho, chi_sigma) = &paulis[dist.sample(&mut rng)];
        let p_plus = ((1.0 + chi_sigma) / 2.0).clamp(0.0, 1.0);
        let counts = draw_counts(&[p_plus, 1.0 - p_plus], shots_per_setting, shot_seed, i as u64)?;
        let mean_sign = (counts[0] as f64 - counts[1] as f64) / shots_per_setting as f64;
        sum_x += mean_sign / chi_rho;
        sum_c2 += 1.0 / (chi_rho * chi_rho);
        labels.push(p.to_string());
    }
    let l = n_settings as f64;
    let m = shots_per_setting as f64;
    let scale = (d as f64 - 1.0) / d as f64;
    let estimate = 1.0 / d as f64 + scale * sum_x / l;
    let t_settings = (2.0 / (l * epsilon)).sqrt();
    let t_shots = (2.0 * sum_c2 * (4.0 / epsilon).ln() / (l * l * m)).sqrt();
    let mut detail = serde_json::Map::new();
    detail.insert("n_settings".into(), json!(n_settings));
    detail.insert("shots_per_setting".into(), json!(shots_per_setting));
    detail.insert("setting_term".into(), json!(scale * t_settings));
    detail.insert("shot_term".into(), json!(scale * t_shots));
    detail.insert("paulis".into(), json!(labels));
    Ok(BaselineResult {
        method: BaselineMethod::Dfe,
        estimate,
        risk_estimate: scale * (t_settings + t_shots),
        detail,
    })
}
