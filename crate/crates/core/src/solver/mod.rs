//! Saddle-point construction of the affine estimator and its certified risk.
//!
//! The concave-convex function is
//!
//! ```text
//! Phi(chi1, chi2; phi, alpha) = tr(O chi1) - tr(O chi2) + 2 alpha ln(2/eps)
//!     + alpha sum_l R_l [ ln sum_k exp(-phi_k/alpha) p1_k + ln sum_k exp(phi_k/alpha) p2_k ]
//! ```
//!
//! maximized over density matrices and minimized over `(phi, alpha)`; its
//! saddle value is twice the risk. All Born distributions inside the solver
//! come from the shrunken states `(1 - mix) chi + mix I/d` (see
//! [`Regularization`]), so the certified risk is for that family.

mod ascent;
mod config;
mod extract;
mod problem;
mod saddle;
mod spectraplex;

pub use config::SolverConfig;
pub use extract::{extract_estimator, extract_estimator_forced};
pub use problem::Regularization;
pub use saddle::{certify_gap, solve_saddle, DiagnosticRow, SaddleSolution};

use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, Observable};
use crate::scalar::Scalar;
use crate::schemes::MeasurementScheme;
use problem::Problem;

/// Near-optimality factor `2 + ln 64 / ln(0.25 / eps)`, defined on
/// `0 < eps < 1/4`.
pub fn theta(epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 0.25) {
        return Err(Error::InvalidParameter(format!(
            "epsilon {epsilon} outside (0, 0.25)"
        )));
    }
    Ok(2.0 + 64f64.ln() / (0.25 / epsilon).ln())
}

/// Evaluates the concave-convex function with default regularization.
#[allow(clippy::too_many_arguments)]
pub fn phi_value<T: Scalar>(
    chi1: &DensityMatrix<T>,
    chi2: &DensityMatrix<T>,
    phi: &[Vec<T>],
    alpha: T,
    scheme: &MeasurementScheme<T>,
    functional: &Observable<T>,
    epsilon: f64,
) -> Result<T> {
    phi_value_regularized(chi1, chi2, phi, alpha, scheme, functional, epsilon, &Regularization::default())
}

#[allow(clippy::too_many_arguments)]
pub fn phi_value_regularized<T: Scalar>(
    chi1: &DensityMatrix<T>,
    chi2: &DensityMatrix<T>,
    phi: &[Vec<T>],
    alpha: T,
    scheme: &MeasurementScheme<T>,
    functional: &Observable<T>,
    epsilon: f64,
    reg: &Regularization,
) -> Result<T> {
    let problem = Problem::new(functional, scheme, epsilon, reg)?;
    problem.phi_value(chi1.matrix(), chi2.matrix(), phi, alpha)
}

/// `sum_l R_l ln Aff_l` between the regularized outcome distributions of
/// two states, `Aff_l = sum_k sqrt(p1_k p2_k)`.
pub fn reduced_constraint<T: Scalar>(
    chi1: &DensityMatrix<T>,
    chi2: &DensityMatrix<T>,
    scheme: &MeasurementScheme<T>,
) -> Result<T> {
    reduced_constraint_regularized(chi1, chi2, scheme, &Regularization::default())
}

pub fn reduced_constraint_regularized<T: Scalar>(
    chi1: &DensityMatrix<T>,
    chi2: &DensityMatrix<T>,
    scheme: &MeasurementScheme<T>,
    reg: &Regularization,
) -> Result<T> {
    let dummy = Observable::new(crate::quantum::identity::<T>(scheme.dim()))?;
    let problem = Problem::new(&dummy, scheme, 0.05, reg)?;
    problem.check_dim(chi1.matrix())?;
    problem.check_dim(chi2.matrix())?;
    Ok(problem.reduced_constraint(&problem.probs(chi1.matrix()), &problem.probs(chi2.matrix())))
}

/// The `phi` minimizing the concave-convex function at fixed states:
/// `phi_k = (alpha/2) ln(p1_k / p2_k)` on regularized distributions.
pub fn closed_form_phi<T: Scalar>(
    chi1: &DensityMatrix<T>,
    chi2: &DensityMatrix<T>,
    alpha: T,
    scheme: &MeasurementScheme<T>,
    reg: &Regularization,
) -> Result<Vec<Vec<T>>> {
    let dummy = Observable::new(crate::quantum::identity::<T>(scheme.dim()))?;
    let problem = Problem::new(&dummy, scheme, 0.05, reg)?;
    problem.check_dim(chi1.matrix())?;
    problem.check_dim(chi2.matrix())?;
    Ok(problem.closed_form_phi(&problem.probs(chi1.matrix()), &problem.probs(chi2.matrix()), alpha))
}

#[cfg(test)]
mod tests;
