//! Euclidean projection onto the set of density matrices and the matching
//! linear maximization oracle.

use crate::quantum::{from_spectrum, hermitian_eigh, ComplexMatrix};
use crate::scalar::Scalar;

/// Projection of `y` onto the probability simplex.
pub(crate) fn project_simplex<T: Scalar>(y: &[T]) -> Vec<T> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let mut cumsum = T::zero();
    let mut theta = T::zero();
    for (j, &uj) in u.iter().enumerate() {
        cumsum += uj;
        let t = (cumsum - T::one()) / T::from_usize_lossy(j + 1);
        if uj - t > T::zero() {
            theta = t;
        }
    }
    y.iter()
        .map(|&v| if v > theta { v - theta } else { T::zero() })
        .collect()
}

/// Nearest density matrix in Frobenius norm to the Hermitian part of `h`.
pub(crate) fn project_density<T: Scalar>(h: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (values, vectors) = hermitian_eigh(h);
    let projected = project_simplex(&values);
    from_spectrum(&projected, &vectors)
}

/// `max_{rho} <g, rho>` over density matrices: the top eigenvalue of `g`.
pub(crate) fn max_linear<T: Scalar>(g: &ComplexMatrix<T>) -> T {
    let (values, _) = hermitian_eigh(g);
    values[values.len() - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{max_abs_diff, random_pure_state, DensityMatrix};
    use proptest::prelude::*;

    #[test]
    fn simplex_projection_examples() {
        assert_eq!(project_simplex(&[0.5f64, 0.5]), vec![0.5, 0.5]);
        assert_eq!(project_simplex(&[2.0f64, 0.0]), vec![1.0, 0.0]);
        let p = project_simplex(&[0.2f64, 0.2, 0.2]);
        for v in p {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn density_matrices_are_fixed_points() {
        let psi = random_pure_state::<f64>(2, 3).unwrap().density();
        let mixed = crate::quantum::depolarize(&psi, 0.4).unwrap();
        let p = project_density(mixed.matrix());
        assert!(max_abs_diff(&p, mixed.matrix()) < 1e-12);
    }

    proptest! {
        #[test]
        fn projection_is_a_density_matrix(entries in proptest::collection::vec(-3.0f64..3.0, 32)) {
            let h = ComplexMatrix::<f64>::from_fn(4, 4, |i, j| {
                num_complex::Complex::new(entries[i * 4 + j], entries[16 + i * 4 + j])
            });
            let h = (&h + h.adjoint()) * num_complex::Complex::new(0.5, 0.0);
            let p = project_density(&h);
            prop_assert!(DensityMatrix::new(p.clone()).is_ok());
            // idempotent
            prop_assert!(max_abs_diff(&project_density(&p), &p) < 1e-10);
        }
    }
}
