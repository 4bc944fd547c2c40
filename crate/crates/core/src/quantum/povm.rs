use super::{
    all_finite, hermitian_eigh, hermitian_part, hermiticity_defect, identity, max_abs_diff,
    trace_product_re, ComplexMatrix, DensityMatrix,
};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerances};
use nalgebra::DMatrix;

/// Ordered list of PSD effects summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm<T: Scalar> {
    effects: Vec<ComplexMatrix<T>>,
}

impl<T: Scalar> Povm<T> {
    pub fn new(effects: Vec<ComplexMatrix<T>>) -> Result<Self> {
        Self::with_tolerances(effects, &T::default_tolerances())
    }

    pub fn with_tolerances(effects: Vec<ComplexMatrix<T>>, tol: &Tolerances) -> Result<Self> {
        let first = effects
            .first()
            .ok_or_else(|| Error::InvalidPovm("no effects".into()))?;
        let d = first.nrows();
        if d == 0 {
            return Err(Error::InvalidPovm("zero-dimensional effect".into()));
        }
        let mut sum = DMatrix::zeros(d, d);
        let mut cleaned = Vec::with_capacity(effects.len());
        for (k, e) in effects.into_iter().enumerate() {
            if e.nrows() != d || e.ncols() != d {
                return Err(Error::InvalidPovm(format!("effect {k} has wrong shape")));
            }
            if !all_finite(&e) {
                return Err(Error::InvalidPovm(format!("effect {k} has non-finite entries")));
            }
            let defect = hermiticity_defect(&e);
            if defect > tol.povm {
                return Err(Error::InvalidPovm(format!(
                    "effect {k} not Hermitian (defect {defect:.3e})"
                )));
            }
            let e = hermitian_part(&e);
            let min = hermitian_eigh(&e).0[0].as_f64();
            if min < -tol.psd {
                return Err(Error::InvalidPovm(format!(
                    "effect {k} has negative eigenvalue {min:.3e}"
                )));
            }
            sum += &e;
            cleaned.push(e);
        }
        let defect = max_abs_diff(&sum, &identity(d));
        if defect > tol.povm {
            return Err(Error::InvalidPovm(format!(
                "effects do not sum to identity (defect {defect:.3e})"
            )));
        }
        Ok(Self { effects: cleaned })
    }

    pub fn dim(&self) -> usize {
        self.effects[0].nrows()
    }

    pub fn num_outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn effects(&self) -> &[ComplexMatrix<T>] {
        &self.effects
    }

    /// Raw `tr(E_k state)` values, no clipping.
    pub(crate) fn raw_probabilities(&self, state: &ComplexMatrix<T>) -> Vec<T> {
        self.effects
            .iter()
            .map(|e| trace_product_re(e, state))
            .collect()
    }
}

/// Born-rule outcome distribution `p_k = tr(E_k state)`.
///
/// Rounding negatives down to `-psd` tolerance are clipped to zero and the
/// vector is renormalized.
pub fn born_distribution<T: Scalar>(povm: &Povm<T>, state: &DensityMatrix<T>) -> Result<Vec<T>> {
    if povm.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: povm.dim(),
            found: state.dim(),
        });
    }
    let slack = T::default_tolerances().psd;
    let mut p = povm.raw_probabilities(state.matrix());
    for (k, v) in p.iter_mut().enumerate() {
        if v.as_f64() < -slack {
            return Err(Error::InvalidPovm(format!(
                "outcome {k} has probability {:.3e}",
                v.as_f64()
            )));
        }
        if *v < T::zero() {
            *v = T::zero();
        }
    }
    let total = p.iter().fold(T::zero(), |a, &b| a + b);
    for v in p.iter_mut() {
        *v /= total;
    }
    Ok(p)
}
