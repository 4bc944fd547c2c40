//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All matrix math is written against [`Scalar`], which is implemented for
//! `f32` and `f64`. Tolerances are carried as `f64` and converted on use so a
//! single [`Tolerances`] value can drive either precision.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};

/// Real floating-point type usable by the estimator machinery.
pub trait Scalar:
    RealField + Copy + FromPrimitive + ToPrimitive + Display + Debug + Send + Sync + 'static
{
    /// Tolerances appropriate for the precision of this type.
    fn default_tolerances() -> Tolerances;

    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).expect("scalar representable as f64")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize representable")
    }
}

impl Scalar for f64 {
    fn default_tolerances() -> Tolerances {
        Tolerances::default()
    }
}

impl Scalar for f32 {
    fn default_tolerances() -> Tolerances {
        Tolerances {
            hermitian: 1e-5,
            trace: 1e-5,
            psd: 1e-5,
            povm: 1e-5,
            norm: 1e-5,
            imaginary: 1e-5,
        }
    }
}

/// Complex entry type.
pub type C<T> = Complex<T>;

/// Numerical acceptance thresholds for the structural invariants of states,
/// observables and POVMs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max entrywise modulus of `A - A^dagger`.
    pub hermitian: f64,
    /// Allowed deviation of a density-matrix trace from 1.
    pub trace: f64,
    /// Slack on the minimum eigenvalue (states and effects).
    pub psd: f64,
    /// Max entrywise modulus of `sum_k E_k - I`.
    pub povm: f64,
    /// Allowed deviation of a pure-state norm from 1.
    pub norm: f64,
    /// Largest imaginary residue tolerated on a real-valued trace.
    pub imaginary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            trace: 1e-10,
            psd: 1e-9,
            povm: 1e-9,
            norm: 1e-10,
            imaginary: 1e-9,
        }
    }
}
