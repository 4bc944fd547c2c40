//! Dense complex-matrix quantum objects: states, observables, POVMs, Pauli
//! algebra and named-state constructors.

mod json;
mod named;
mod observable;
mod pauli;
mod povm;
mod random;
mod state;

pub use json::{matrix_from_json, matrix_to_json, JsonMatrix, OperatorData, OperatorFile, OperatorKind};
pub use named::{cluster_state, ghz_state, named_state, w_state, werner_state, NamedState, StateValue};
pub use observable::{build_observable, swap_operator, Observable, ObservableSpec};
pub use pauli::{Pauli, PauliString};
pub use povm::{born_distribution, Povm};
pub use random::{haar_unitary, haar_vector, random_density_matrix, random_pure_state};
pub use state::{depolarize, expectation_value, DensityMatrix, PureState};

use crate::scalar::{Scalar, C};
use nalgebra::{DMatrix, DVector};

/// Dense square complex matrix; the carrier for every operator in the crate.
pub type ComplexMatrix<T> = DMatrix<C<T>>;
/// Dense complex column vector.
pub type ComplexVector<T> = DVector<C<T>>;

#[inline]
pub(crate) fn modulus<T: Scalar>(z: C<T>) -> T {
    z.norm_sqr().sqrt()
}

#[inline]
pub(crate) fn cr<T: Scalar>(re: T) -> C<T> {
    C::new(re, T::zero())
}

pub(crate) fn identity<T: Scalar>(dim: usize) -> ComplexMatrix<T> {
    DMatrix::identity(dim, dim)
}

/// Largest entrywise modulus of `a - a^dagger`.
pub(crate) fn hermiticity_defect<T: Scalar>(a: &ComplexMatrix<T>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = modulus(a[(i, j)] - a[(j, i)].conj()).as_f64();
            worst = worst.max(d);
        }
    }
    worst
}

pub(crate) fn max_abs_diff<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| modulus(*x - *y).as_f64())
        .fold(0.0, f64::max)
}

pub(crate) fn all_finite<T: Scalar>(a: &ComplexMatrix<T>) -> bool {
    a.iter()
        .all(|z| z.re.as_f64().is_finite() && z.im.as_f64().is_finite())
}

/// `(a + a^dagger) / 2`.
pub(crate) fn hermitian_part<T: Scalar>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    (a + a.adjoint()) * cr(T::lit(0.5))
}

/// Real part of `tr(a b)` computed without forming the product. Exact for
/// Hermitian `a`, `b`, where the trace is real.
pub fn trace_product_re<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> T {
    let n = a.nrows();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            let x = a[(i, j)];
            let y = b[(j, i)];
            acc += x.re * y.re - x.im * y.im;
        }
    }
    acc
}

pub(crate) fn trace_product<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> C<T> {
    let n = a.nrows();
    let mut acc = C::new(T::zero(), T::zero());
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending; columns
/// of the returned matrix are the matching orthonormal eigenvectors.
pub fn hermitian_eigh<T: Scalar>(a: &ComplexMatrix<T>) -> (Vec<T>, ComplexMatrix<T>) {
    let eig = hermitian_part(a).symmetric_eigen();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Rebuilds `V diag(w) V^dagger`.
pub(crate) fn from_spectrum<T: Scalar>(values: &[T], vectors: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = vectors.nrows();
    let mut scaled = vectors.clone();
    for (j, &w) in values.iter().enumerate() {
        let mut col = scaled.column_mut(j);
        col *= cr(w);
    }
    let mut out = &scaled * vectors.adjoint();
    // Hermitian by construction; remove rounding asymmetry.
    for i in 0..n {
        out[(i, i)].im = T::zero();
    }
    hermitian_part(&out)
}

pub(crate) fn projector<T: Scalar>(v: &ComplexVector<T>) -> ComplexMatrix<T> {
    v * v.adjoint()
}

pub fn kron<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    a.kronecker(b)
}
