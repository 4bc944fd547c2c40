use super::{hermitian_part, ComplexMatrix, ComplexVector, DensityMatrix, PureState};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn complex_normal<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(T::lit(re), T::lit(im))
}

/// Haar-random unit vector: normalized i.i.d. complex Gaussian amplitudes.
pub fn haar_vector<T: Scalar, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexVector<T> {
    loop {
        let v = ComplexVector::from_fn(dim, |_, _| complex_normal::<T, R>(rng));
        let n = v.norm();
        if n.as_f64() > 1e-12 {
            return v.unscale(n);
        }
    }
}

/// Haar-random unitary from Gram-Schmidt on a complex Ginibre matrix.
pub fn haar_unitary<T: Scalar, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    'retry: loop {
        let mut u = ComplexMatrix::from_fn(dim, dim, |_, _| complex_normal::<T, R>(rng));
        for j in 0..dim {
            for i in 0..j {
                let proj = u.column(i).dotc(&u.column(j));
                let ci = u.column(i).clone_owned();
                let mut cj = u.column_mut(j);
                cj -= ci * proj;
            }
            let n = u.column(j).norm();
            if n.as_f64() < 1e-10 {
                continue 'retry;
            }
            let mut cj = u.column_mut(j);
            cj.unscale_mut(n);
        }
        return u;
    }
}

/// Haar-random `n_qubits` pure state, deterministic in `seed`.
pub fn random_pure_state<T: Scalar>(n_qubits: usize, seed: u64) -> Result<PureState<T>> {
    if n_qubits < 1 {
        return Err(Error::InvalidParameter("need at least one qubit".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PureState::normalized(haar_vector(1 << n_qubits, &mut rng))
}

/// Random density matrix `G G^dag / tr(G G^dag)` with `G` a `dim x rank`
/// complex Ginibre matrix.
pub fn random_density_matrix<T: Scalar>(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix<T>> {
    if dim == 0 || rank == 0 {
        return Err(Error::InvalidParameter("dimension and rank must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g: ComplexMatrix<T> = ComplexMatrix::from_fn(dim, rank, |_, _| complex_normal::<T, _>(&mut rng));
    let m = hermitian_part(&(&g * g.adjoint()));
    let tr = m.trace().re;
    Ok(DensityMatrix::from_matrix_unchecked(m.unscale(tr)))
}
