use super::{all_finite, cr, hermitian_eigh, hermitian_part, hermiticity_defect, ComplexMatrix, PauliString};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerances};
use nalgebra::DMatrix;

/// Hermitian operator whose expectation value is the estimation target.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T: Scalar> {
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> Observable<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerances(matrix, &T::default_tolerances())
    }

    pub fn with_tolerances(matrix: ComplexMatrix<T>, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidObservable("matrix must be square and non-empty".into()));
        }
        if !all_finite(&matrix) {
            return Err(Error::InvalidObservable("non-finite entry".into()));
        }
        let defect = hermiticity_defect(&matrix);
        if defect > tol.hermitian {
            return Err(Error::InvalidObservable(format!(
                "not Hermitian (defect {defect:.3e})"
            )));
        }
        Ok(Self {
            matrix: hermitian_part(&matrix),
        })
    }

    pub(crate) fn from_hermitian_unchecked(matrix: ComplexMatrix<T>) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eigh(&self.matrix).0
    }

    /// `(lambda_min, lambda_max)`.
    pub fn spectral_range(&self) -> (T, T) {
        let ev = self.eigenvalues();
        (ev[0], ev[ev.len() - 1])
    }
}

/// Ways of naming an observable.
#[derive(Debug, Clone, PartialEq)]
pub enum ObservableSpec<T: Scalar> {
    /// Tensor product over `{I, X, Y, Z}`, optionally signed.
    Pauli(String),
    /// Two-qubit swap.
    Swap,
    Dense(ComplexMatrix<T>),
}

pub fn build_observable<T: Scalar>(spec: &ObservableSpec<T>) -> Result<Observable<T>> {
    match spec {
        ObservableSpec::Pauli(s) => {
            let p: PauliString = s.parse()?;
            if p.sign().is_none() {
                return Err(Error::MalformedPauli(s.clone()));
            }
            Ok(Observable::from_hermitian_unchecked(p.matrix()))
        }
        ObservableSpec::Swap => Ok(Observable::from_hermitian_unchecked(swap_operator(2))),
        ObservableSpec::Dense(m) => Observable::new(m.clone()),
    }
}

/// Swap of two `local_dim`-dimensional subsystems.
pub fn swap_operator<T: Scalar>(local_dim: usize) -> ComplexMatrix<T> {
    let d = local_dim * local_dim;
    let mut m = DMatrix::zeros(d, d);
    for i in 0..local_dim {
        for j in 0..local_dim {
            m[(i * local_dim + j, j * local_dim + i)] = cr(T::one());
        }
    }
    m
}

impl<T: Scalar> std::str::FromStr for ObservableSpec<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("swap") {
            Ok(ObservableSpec::Swap)
        } else {
            Ok(ObservableSpec::Pauli(s.trim().to_string()))
        }
    }
}
