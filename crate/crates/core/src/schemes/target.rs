use super::MeasurementScheme;
use crate::error::Result;
use crate::quantum::{haar_vector, projector, ComplexVector, Povm, PureState};
use crate::scalar::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const COMPLETION_SEED: u64 = 0x7a67_6574;

/// Orthonormal basis whose first vector is `target`, completed by
/// Gram-Schmidt on a fixed-seed sequence of random vectors.
fn completed_basis<T: Scalar>(target: &PureState<T>) -> Vec<ComplexVector<T>> {
    let d = target.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(COMPLETION_SEED);
    let mut basis = vec![target.amplitudes().clone()];
    while basis.len() < d {
        let mut v: ComplexVector<T> = haar_vector(d, &mut rng);
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&v);
                v -= b * c;
            }
        }
        let n = v.norm();
        if n.as_f64() > 1e-6 {
            basis.push(v.unscale(n));
        }
    }
    basis
}

/// Single-setting projective measurement in a basis containing the target;
/// outcome 0 is the target.
pub fn target_basis_scheme<T: Scalar>(target: &PureState<T>, shots: usize) -> Result<MeasurementScheme<T>> {
    let effects = completed_basis(target).iter().map(projector).collect();
    MeasurementScheme::new(vec![Povm::new(effects)?], vec![shots], vec!["target-basis".into()])
}
