//! Nearly minimax-optimal affine estimators for quantum state fidelity and
//! observable expectation values under arbitrary POVM measurement schemes.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix the common double-precision case.

pub mod error;
pub mod estimator;
pub mod quantum;
pub mod scalar;
pub mod schemes;
pub mod simulate;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::{Scalar, Tolerances};

pub type ComplexMatrix64 = quantum::ComplexMatrix<f64>;
pub type PureState64 = quantum::PureState<f64>;
pub type DensityMatrix64 = quantum::DensityMatrix<f64>;
pub type Observable64 = quantum::Observable<f64>;
pub type Povm64 = quantum::Povm<f64>;
pub type MeasurementScheme64 = schemes::MeasurementScheme<f64>;
pub type SaddleSolution64 = solver::SaddleSolution<f64>;
