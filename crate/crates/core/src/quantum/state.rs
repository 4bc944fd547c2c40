use super::{
    all_finite, cr, hermitian_eigh, hermiticity_defect, identity, projector, trace_product,
    ComplexMatrix, ComplexVector, Observable,
};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerances, C};

/// Unit vector in `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Scalar> {
    amplitudes: ComplexVector<T>,
}

impl<T: Scalar> PureState<T> {
    /// Validates unit norm.
    pub fn new(amplitudes: ComplexVector<T>) -> Result<Self> {
        Self::with_tolerances(amplitudes, &T::default_tolerances())
    }

    pub fn with_tolerances(amplitudes: ComplexVector<T>, tol: &Tolerances) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("empty amplitude vector".into()));
        }
        let norm = amplitudes.norm().as_f64();
        if !norm.is_finite() || (norm - 1.0).abs() > tol.norm {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self { amplitudes })
    }

    /// Scales an arbitrary non-zero vector to unit norm.
    pub fn normalized(amplitudes: ComplexVector<T>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm.as_f64() == 0.0 || !norm.as_f64().is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(Self {
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// Computational basis vector `|index>`.
    pub fn basis(index: usize, dim: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut v = ComplexVector::zeros(dim);
        v[index] = cr(T::one());
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &ComplexVector<T> {
        &self.amplitudes
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> ComplexMatrix<T> {
        projector(&self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix<T> {
        DensityMatrix {
            matrix: self.projector(),
        }
    }

    /// The rank-one projector as an observable, i.e. the fidelity functional.
    pub fn fidelity_observable(&self) -> Observable<T> {
        Observable::from_hermitian_unchecked(self.projector())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState<T>) -> C<T> {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Scalar> {
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerances(matrix, &T::default_tolerances())
    }

    pub fn with_tolerances(matrix: ComplexMatrix<T>, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidState("matrix must be square and non-empty".into()));
        }
        if !all_finite(&matrix) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let herm = hermiticity_defect(&matrix);
        if herm > tol.hermitian {
            return Err(Error::InvalidState(format!("not Hermitian (defect {herm:.3e})")));
        }
        let tr = matrix.trace().re.as_f64();
        if (tr - 1.0).abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let (values, _) = hermitian_eigh(&matrix);
        let min = values[0].as_f64();
        if min < -tol.psd {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self { matrix })
    }

    /// For matrices that are density matrices by construction.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix<T>) -> Self {
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let scale = T::one() / T::from_usize_lossy(dim);
        Self {
            matrix: identity::<T>(dim) * cr(scale),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// `t * self + (1 - t) * other`.
    pub fn mix(&self, other: &DensityMatrix<T>, t: T) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self {
            matrix: &self.matrix * cr(t) + &other.matrix * cr(T::one() - t),
        })
    }
}

impl<T: Scalar> From<&PureState<T>> for DensityMatrix<T> {
    fn from(psi: &PureState<T>) -> Self {
        psi.density()
    }
}

/// `(1 - lambda) * state + lambda * I / dim`.
pub fn depolarize<T: Scalar>(state: &DensityMatrix<T>, lambda: T) -> Result<DensityMatrix<T>> {
    let l = lambda.as_f64();
    if !(0.0..=1.0).contains(&l) {
        return Err(Error::InvalidParameter(format!(
            "depolarizing strength {l} outside [0, 1]"
        )));
    }
    let d = state.dim();
    let mixed = identity::<T>(d) * cr(lambda / T::from_usize_lossy(d));
    Ok(DensityMatrix {
        matrix: state.matrix() * cr(T::one() - lambda) + mixed,
    })
}

/// `tr(O state)`; the imaginary residue must be negligible.
pub fn expectation_value<T: Scalar>(obs: &Observable<T>, state: &DensityMatrix<T>) -> Result<T> {
    if obs.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: obs.dim(),
            found: state.dim(),
        });
    }
    let z = trace_product(obs.matrix(), state.matrix());
    let tol = T::default_tolerances().imaginary;
    if z.im.as_f64().abs() > tol.max(tol * z.re.as_f64().abs()) {
        return Err(Error::InvalidObservable(format!(
            "expectation has imaginary part {:.3e}",
            z.im.as_f64()
        )));
    }
    Ok(z.re)
}
