//! Precomputed saddle-point data and the objectives built from it.

use super::ascent::ConcaveObjective;
use crate::error::{Error, Result};
use crate::quantum::{cr, trace_product_re, ComplexMatrix, Observable};
use crate::scalar::Scalar;
use crate::schemes::MeasurementScheme;

/// Shrinkage applied to every state before the Born rule inside the solver,
/// and the floor applied to probabilities before logarithms. The reported
/// risk is for the shrunken family `(1 - mix) chi + mix I/d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regularization {
    pub mix_lambda: f64,
    pub prob_floor: f64,
}

impl Default for Regularization {
    fn default() -> Self {
        Self {
            mix_lambda: 1e-6,
            prob_floor: 1e-12,
        }
    }
}

/// Max-shifted `ln sum_k exp(x_k) p_k`.
pub(crate) fn log_sum_exp_weighted<T: Scalar>(x: &[T], p: &[T]) -> T {
    let m = x.iter().copied().fold(x[0], |a, b| if b > a { b } else { a });
    let s = x
        .iter()
        .zip(p)
        .fold(T::zero(), |acc, (&xi, &pi)| acc + (xi - m).exp() * pi);
    m + s.ln()
}

pub(crate) struct Problem<T: Scalar> {
    pub dim: usize,
    pub effects: Vec<Vec<ComplexMatrix<T>>>,
    /// `tr(E_k) / d` per effect.
    pub mixed_probs: Vec<Vec<T>>,
    pub reps: Vec<T>,
    pub functional: ComplexMatrix<T>,
    pub log_two_over_eps: T,
    pub mix: T,
    pub floor: T,
}

impl<T: Scalar> Problem<T> {
    pub fn new(
        functional: &Observable<T>,
        scheme: &MeasurementScheme<T>,
        epsilon: f64,
        reg: &Regularization,
    ) -> Result<Self> {
        if functional.dim() != scheme.dim() {
            return Err(Error::DimensionMismatch {
                expected: scheme.dim(),
                found: functional.dim(),
            });
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside (0, 1)")));
        }
        if !(0.0..1.0).contains(&reg.mix_lambda) || reg.prob_floor <= 0.0 {
            return Err(Error::InvalidParameter("invalid regularization".into()));
        }
        let d = scheme.dim();
        let inv_d = T::one() / T::from_usize_lossy(d);
        let effects: Vec<Vec<ComplexMatrix<T>>> =
            scheme.povms().iter().map(|p| p.effects().to_vec()).collect();
        let mixed_probs = effects
            .iter()
            .map(|es| es.iter().map(|e| e.trace().re * inv_d).collect())
            .collect();
        Ok(Self {
            dim: d,
            effects,
            mixed_probs,
            reps: scheme
                .repetitions()
                .iter()
                .map(|&r| T::from_usize_lossy(r))
                .collect(),
            functional: functional.matrix().clone(),
            log_two_over_eps: T::lit((2.0 / epsilon).ln()),
            mix: T::lit(reg.mix_lambda),
            floor: T::lit(reg.prob_floor),
        })
    }

    pub fn check_dim(&self, chi: &ComplexMatrix<T>) -> Result<()> {
        if chi.nrows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: chi.nrows(),
            });
        }
        Ok(())
    }

    pub fn functional_value(&self, chi: &ComplexMatrix<T>) -> T {
        trace_product_re(&self.functional, chi)
    }

    /// Regularized, floored Born distributions; the flag marks entries that
    /// sit on the floor (zero derivative).
    pub fn probs_with_mask(&self, chi: &ComplexMatrix<T>) -> Vec<Vec<(T, bool)>> {
        let keep = T::one() - self.mix;
        self.effects
            .iter()
            .zip(&self.mixed_probs)
            .map(|(es, mp)| {
                es.iter()
                    .zip(mp)
                    .map(|(e, &m)| {
                        let p = keep * trace_product_re(e, chi) + self.mix * m;
                        if p < self.floor {
                            (self.floor, true)
                        } else {
                            (p, false)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn probs(&self, chi: &ComplexMatrix<T>) -> Vec<Vec<T>> {
        self.probs_with_mask(chi)
            .into_iter()
            .map(|v| v.into_iter().map(|(p, _)| p).collect())
            .collect()
    }

    /// Per-setting Hellinger affinity.
    pub fn affinities(&self, p1: &[Vec<T>], p2: &[Vec<T>]) -> Vec<T> {
        p1.iter()
            .zip(p2)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .fold(T::zero(), |acc, (&x, &y)| acc + (x * y).sqrt())
            })
            .collect()
    }

    /// `g = sum_l R_l ln Aff_l`.
    pub fn reduced_constraint(&self, p1: &[Vec<T>], p2: &[Vec<T>]) -> T {
        self.affinities(p1, p2)
            .iter()
            .zip(&self.reps)
            .fold(T::zero(), |acc, (&a, &r)| acc + r * a.min(T::one()).ln())
    }

    /// The concave-convex function at `(chi1, chi2; phi, alpha)`.
    pub fn phi_value(
        &self,
        chi1: &ComplexMatrix<T>,
        chi2: &ComplexMatrix<T>,
        phi: &[Vec<T>],
        alpha: T,
    ) -> Result<T> {
        if alpha <= T::zero() {
            return Err(Error::InvalidParameter("alpha must be positive".into()));
        }
        self.check_dim(chi1)?;
        self.check_dim(chi2)?;
        self.check_phi(phi)?;
        let p1 = self.probs(chi1);
        let p2 = self.probs(chi2);
        let mut acc = T::zero();
        for l in 0..self.effects.len() {
            let neg: Vec<T> = phi[l].iter().map(|&f| -f / alpha).collect();
            let pos: Vec<T> = phi[l].iter().map(|&f| f / alpha).collect();
            acc += self.reps[l]
                * (log_sum_exp_weighted(&neg, &p1[l]) + log_sum_exp_weighted(&pos, &p2[l]));
        }
        Ok(self.functional_value(chi1) - self.functional_value(chi2)
            + T::lit(2.0) * alpha * self.log_two_over_eps
            + alpha * acc)
    }

    pub fn check_phi(&self, phi: &[Vec<T>]) -> Result<()> {
        if phi.len() != self.effects.len()
            || phi.iter().zip(&self.effects).any(|(f, e)| f.len() != e.len())
        {
            return Err(Error::InvalidParameter(
                "phi shape does not match the scheme".into(),
            ));
        }
        Ok(())
    }

    /// `phi_k = (alpha / 2) ln(p1_k / p2_k)`, the minimizer over `phi` at
    /// fixed states.
    pub fn closed_form_phi(&self, p1: &[Vec<T>], p2: &[Vec<T>], alpha: T) -> Vec<Vec<T>> {
        let half = alpha * T::lit(0.5);
        p1.iter()
            .zip(p2)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| half * (x / y).ln()).collect())
            .collect()
    }

    /// `sum_k c_k E_k` over all settings, scaled by the shrinkage factor.
    fn combine(&self, coeffs: &[Vec<T>]) -> ComplexMatrix<T> {
        let mut g = ComplexMatrix::zeros(self.dim, self.dim);
        for (es, cs) in self.effects.iter().zip(coeffs) {
            for (e, &c) in es.iter().zip(cs) {
                if c != T::zero() {
                    g += e * cr(c);
                }
            }
        }
        g * cr(T::one() - self.mix)
    }
}

/// `tr(O (chi1 - chi2)) + 2 alpha g(chi1, chi2)`: the objective whose
/// maximum is `h(alpha) - 2 alpha ln(2/eps)`.
pub(crate) struct JointObjective<'a, T: Scalar> {
    pub problem: &'a Problem<T>,
    pub alpha: T,
}

impl<T: Scalar> ConcaveObjective<T> for JointObjective<'_, T> {
    fn value(&self, xs: &[ComplexMatrix<T>]) -> T {
        let pr = self.problem;
        let p1 = pr.probs(&xs[0]);
        let p2 = pr.probs(&xs[1]);
        pr.functional_value(&xs[0]) - pr.functional_value(&xs[1])
            + T::lit(2.0) * self.alpha * pr.reduced_constraint(&p1, &p2)
    }

    fn value_grad(&self, xs: &[ComplexMatrix<T>]) -> (T, Vec<ComplexMatrix<T>>) {
        let pr = self.problem;
        let p1 = pr.probs_with_mask(&xs[0]);
        let p2 = pr.probs_with_mask(&xs[1]);
        let mut c1 = Vec::with_capacity(p1.len());
        let mut c2 = Vec::with_capacity(p1.len());
        let mut g = T::zero();
        for l in 0..p1.len() {
            let aff = p1[l]
                .iter()
                .zip(&p2[l])
                .fold(T::zero(), |acc, (a, b)| acc + (a.0 * b.0).sqrt());
            g += pr.reps[l] * aff.min(T::one()).ln();
            let scale = self.alpha * pr.reps[l] / aff;
            c1.push(
                p1[l]
                    .iter()
                    .zip(&p2[l])
                    .map(|(a, b)| if a.1 { T::zero() } else { scale * (b.0 / a.0).sqrt() })
                    .collect::<Vec<T>>(),
            );
            c2.push(
                p1[l]
                    .iter()
                    .zip(&p2[l])
                    .map(|(a, b)| if b.1 { T::zero() } else { scale * (a.0 / b.0).sqrt() })
                    .collect::<Vec<T>>(),
            );
        }
        let value = pr.functional_value(&xs[0]) - pr.functional_value(&xs[1])
            + T::lit(2.0) * self.alpha * g;
        let g1 = &pr.functional + pr.combine(&c1);
        let g2 = pr.combine(&c2) - &pr.functional;
        (value, vec![g1, g2])
    }
}

/// One half of the separable inner maximization at fixed `(phi, alpha)`:
/// `sign tr(O chi) + alpha sum_l R_l ln sum_k exp(-sign phi_k / alpha) p_k`.
pub(crate) struct SideObjective<'a, T: Scalar> {
    pub problem: &'a Problem<T>,
    pub alpha: T,
    sign: T,
    /// `exp(x_k - shift_l)` with `x_k = -sign phi_k / alpha`.
    weights: Vec<Vec<T>>,
    shifts: Vec<T>,
}

impl<'a, T: Scalar> SideObjective<'a, T> {
    /// `upper == true` builds the `chi1` side (sign `+1`).
    pub fn new(problem: &'a Problem<T>, phi: &[Vec<T>], alpha: T, upper: bool) -> Self {
        let sign = if upper { T::one() } else { -T::one() };
        let mut weights = Vec::with_capacity(phi.len());
        let mut shifts = Vec::with_capacity(phi.len());
        for f in phi {
            let x: Vec<T> = f.iter().map(|&v| -sign * v / alpha).collect();
            let m = x.iter().copied().fold(x[0], |a, b| if b > a { b } else { a });
            weights.push(x.iter().map(|&v| (v - m).exp()).collect());
            shifts.push(m);
        }
        Self {
            problem,
            alpha,
            sign,
            weights,
            shifts,
        }
    }
}

impl<T: Scalar> ConcaveObjective<T> for SideObjective<'_, T> {
    fn value(&self, xs: &[ComplexMatrix<T>]) -> T {
        let pr = self.problem;
        let p = pr.probs(&xs[0]);
        let mut acc = T::zero();
        for l in 0..p.len() {
            let s = self.weights[l]
                .iter()
                .zip(&p[l])
                .fold(T::zero(), |a, (&w, &q)| a + w * q);
            acc += pr.reps[l] * (self.shifts[l] + s.ln());
        }
        self.sign * pr.functional_value(&xs[0]) + self.alpha * acc
    }

    fn value_grad(&self, xs: &[ComplexMatrix<T>]) -> (T, Vec<ComplexMatrix<T>>) {
        let pr = self.problem;
        let p = pr.probs_with_mask(&xs[0]);
        let mut acc = T::zero();
        let mut coeffs = Vec::with_capacity(p.len());
        for l in 0..p.len() {
            let s = self.weights[l]
                .iter()
                .zip(&p[l])
                .fold(T::zero(), |a, (&w, q)| a + w * q.0);
            acc += pr.reps[l] * (self.shifts[l] + s.ln());
            let scale = self.alpha * pr.reps[l] / s;
            coeffs.push(
                self.weights[l]
                    .iter()
                    .zip(&p[l])
                    .map(|(&w, q)| if q.1 { T::zero() } else { scale * w })
                    .collect::<Vec<T>>(),
            );
        }
        let value = self.sign * pr.functional_value(&xs[0]) + self.alpha * acc;
        let grad = &pr.functional * cr(self.sign) + pr.combine(&coeffs);
        (value, vec![grad])
    }
}
