use super::Regularization;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Confidence level is `1 - epsilon`; must lie in `(0, 0.25)`.
    pub epsilon: f64,
    /// Absolute tolerance on the certified bracket of `2 * risk`.
    pub gap_tol: f64,
    pub mix_lambda: f64,
    pub prob_floor: f64,
    /// Search interval for `ln alpha`.
    pub alpha_log_range: (f64, f64),
    /// Golden-section stops once the `ln alpha` bracket is this narrow.
    pub log_alpha_tol: f64,
    pub max_outer_iters: usize,
    pub max_inner_iters: usize,
    /// Frank-Wolfe gap at which an inner maximization is accepted.
    pub inner_tol: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.05,
            gap_tol: 1e-4,
            mix_lambda: 1e-6,
            prob_floor: 1e-12,
            alpha_log_range: (-30.0, 30.0),
            log_alpha_tol: 1e-6,
            max_outer_iters: 100,
            max_inner_iters: 20_000,
            inner_tol: 1e-9,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        Self {
            epsilon,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 0.25) {
            return Err(Error::InvalidParameter(format!(
                "epsilon {} outside (0, 0.25)",
                self.epsilon
            )));
        }
        if !(self.gap_tol > 0.0) {
            return Err(Error::InvalidParameter("gap_tol must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.mix_lambda) {
            return Err(Error::InvalidParameter("mix_lambda outside [0, 1)".into()));
        }
        if !(self.prob_floor > 0.0) {
            return Err(Error::InvalidParameter("prob_floor must be positive".into()));
        }
        let (lo, hi) = self.alpha_log_range;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidParameter("empty alpha range".into()));
        }
        if self.max_outer_iters == 0 || self.max_inner_iters == 0 || !(self.log_alpha_tol > 0.0) {
            return Err(Error::InvalidParameter("iteration limits must be positive".into()));
        }
        Ok(())
    }

    pub fn regularization(&self) -> Regularization {
        Regularization {
            mix_lambda: self.mix_lambda,
            prob_floor: self.prob_floor,
        }
    }
}
