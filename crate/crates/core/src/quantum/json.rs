//! JSON carrier for states and operators: complex entries as `[re, im]`,
//! matrices as row-major nested arrays.

use super::{ComplexMatrix, ComplexVector, DensityMatrix, Observable, PureState, StateValue};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};
use serde::{Deserialize, Serialize};

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Pure,
    Density,
    Observable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorData {
    Vector(Vec<[f64; 2]>),
    Matrix(JsonMatrix),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub dim: usize,
    pub kind: OperatorKind,
    pub data: OperatorData,
}

pub fn matrix_to_json<T: Scalar>(m: &ComplexMatrix<T>) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re.as_f64(), m[(i, j)].im.as_f64()])
                .collect()
        })
        .collect()
}

pub fn matrix_from_json<T: Scalar>(rows: &JsonMatrix, dim: usize) -> Result<ComplexMatrix<T>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Format(format!("expected a {dim}x{dim} matrix")));
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| {
        let [re, im] = rows[i][j];
        C::new(T::lit(re), T::lit(im))
    }))
}

impl OperatorFile {
    pub fn from_pure<T: Scalar>(psi: &PureState<T>) -> Self {
        Self {
            dim: psi.dim(),
            kind: OperatorKind::Pure,
            data: OperatorData::Vector(
                psi.amplitudes()
                    .iter()
                    .map(|z| [z.re.as_f64(), z.im.as_f64()])
                    .collect(),
            ),
        }
    }

    pub fn from_density<T: Scalar>(rho: &DensityMatrix<T>) -> Self {
        Self {
            dim: rho.dim(),
            kind: OperatorKind::Density,
            data: OperatorData::Matrix(matrix_to_json(rho.matrix())),
        }
    }

    pub fn from_observable<T: Scalar>(obs: &Observable<T>) -> Self {
        Self {
            dim: obs.dim(),
            kind: OperatorKind::Observable,
            data: OperatorData::Matrix(matrix_to_json(obs.matrix())),
        }
    }

    fn matrix<T: Scalar>(&self) -> Result<ComplexMatrix<T>> {
        match &self.data {
            OperatorData::Matrix(rows) => matrix_from_json(rows, self.dim),
            OperatorData::Vector(_) => Err(Error::Format(format!(
                "kind {:?} requires matrix data",
                self.kind
            ))),
        }
    }

    pub fn to_pure<T: Scalar>(&self) -> Result<PureState<T>> {
        match (&self.kind, &self.data) {
            (OperatorKind::Pure, OperatorData::Vector(v)) => {
                if v.len() != self.dim {
                    return Err(Error::Format(format!("expected {} amplitudes", self.dim)));
                }
                PureState::new(ComplexVector::from_iterator(
                    self.dim,
                    v.iter().map(|&[re, im]| C::new(T::lit(re), T::lit(im))),
                ))
            }
            _ => Err(Error::Format("not a pure state".into())),
        }
    }

    /// Pure states are widened to their projector.
    pub fn to_density<T: Scalar>(&self) -> Result<DensityMatrix<T>> {
        match self.kind {
            OperatorKind::Pure => Ok(self.to_pure::<T>()?.density()),
            OperatorKind::Density => DensityMatrix::new(self.matrix()?),
            OperatorKind::Observable => Err(Error::Format("an observable is not a state".into())),
        }
    }

    pub fn to_state_value<T: Scalar>(&self) -> Result<StateValue<T>> {
        match self.kind {
            OperatorKind::Pure => self.to_pure().map(StateValue::Pure),
            _ => self.to_density().map(StateValue::Mixed),
        }
    }

    /// Any kind converts: a pure state becomes its fidelity projector.
    pub fn to_observable<T: Scalar>(&self) -> Result<Observable<T>> {
        match self.kind {
            OperatorKind::Pure => Ok(self.to_pure::<T>()?.fidelity_observable()),
            _ => Observable::new(self.matrix()?),
        }
    }
}
