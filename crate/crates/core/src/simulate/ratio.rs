use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetricInterval {
    pub lo: f64,
    pub hi: f64,
}

impl AsymmetricInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Narrowest interval containing `true_value` and at least a `level`
/// fraction of `estimates`.
pub fn optimal_interval(estimates: &[f64], true_value: f64, level: f64) -> Result<AsymmetricInterval> {
    if estimates.is_empty() {
        return Err(Error::InvalidParameter("no estimates".into()));
    }
    if !(level > 0.0 && level <= 1.0) {
        return Err(Error::InvalidParameter(format!("level {level} outside (0, 1]")));
    }
    if estimates.iter().any(|e| !e.is_finite()) || !true_value.is_finite() {
        return Err(Error::InvalidParameter("non-finite input".into()));
    }
    let mut sorted = estimates.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let m = ((level * n as f64) - 1e-9).ceil().max(1.0) as usize;
    let mut best = AsymmetricInterval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    for i in 0..=n - m {
        let cand = AsymmetricInterval {
            lo: sorted[i].min(true_value),
            hi: sorted[i + m - 1].max(true_value),
        };
        if cand.width() < best.width() {
            best = cand;
        }
    }
    Ok(best)
}

/// `2 * risk` over the width of the optimal interval at `level`.
pub fn interval_ratio(estimates: &[f64], true_value: f64, level: f64, risk: f64) -> Result<f64> {
    let interval = optimal_interval(estimates, true_value, level)?;
    Ok(2.0 * risk / interval.width())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn all_equal_gives_zero_width() {
        let iv = optimal_interval(&[0.7; 200], 0.7, 0.95).unwrap();
        assert_eq!(iv.width(), 0.0);
    }

    #[test]
    fn normal_sample_matches_central_quantiles() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let xs: Vec<f64> = (0..100_000).map(|_| normal.sample(&mut rng)).collect();
        let iv = optimal_interval(&xs, 0.0, 0.95).unwrap();
        assert!((iv.lo + 1.96).abs() < 0.05 && (iv.hi - 1.96).abs() < 0.05);
    }

    #[test]
    fn true_value_is_always_inside() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let iv = optimal_interval(&xs, 500.0, 0.5).unwrap();
        assert_eq!(iv.hi, 500.0);
        assert_eq!(iv.lo, 50.0);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(optimal_interval(&[], 0.0, 0.95).is_err());
    }
}
