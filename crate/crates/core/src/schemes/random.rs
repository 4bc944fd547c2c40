use super::MeasurementScheme;
use crate::error::{Error, Result};
use crate::quantum::{cr, haar_unitary, haar_vector, hermitian_eigh, from_spectrum, projector, ComplexMatrix, ComplexVector, Povm};
use crate::scalar::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `n_settings` random rank-one POVMs with `outcomes_per_setting` effects
/// each. With `outcomes_per_setting == 2^n` every setting is projective onto
/// the columns of a Haar unitary; otherwise Haar vectors are whitened by
/// `G^{-1/2}` with `G = sum_i |v_i><v_i|`.
pub fn random_rank1_scheme<T: Scalar>(
    n_qubits: usize,
    n_settings: usize,
    outcomes_per_setting: usize,
    shots_per_setting: usize,
    seed: u64,
) -> Result<MeasurementScheme<T>> {
    if n_qubits < 1 || n_qubits > 10 {
        return Err(Error::InvalidParameter(format!("unsupported qubit count {n_qubits}")));
    }
    let d = 1usize << n_qubits;
    if outcomes_per_setting < d {
        return Err(Error::InvalidParameter(format!(
            "{outcomes_per_setting} outcomes cannot resolve dimension {d}"
        )));
    }
    if n_settings == 0 {
        return Err(Error::InvalidParameter("need at least one setting".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut povms = Vec::with_capacity(n_settings);
    for _ in 0..n_settings {
        let effects: Vec<ComplexMatrix<T>> = if outcomes_per_setting == d {
            let u: ComplexMatrix<T> = haar_unitary(d, &mut rng);
            (0..d)
                .map(|j| projector(&u.column(j).clone_owned()))
                .collect()
        } else {
            let vs: Vec<ComplexVector<T>> = (0..outcomes_per_setting)
                .map(|_| haar_vector(d, &mut rng))
                .collect();
            let g = vs
                .iter()
                .fold(ComplexMatrix::zeros(d, d), |acc, v| acc + projector(v));
            let (vals, vecs) = hermitian_eigh(&g);
            if vals[0].as_f64() < 1e-12 {
                return Err(Error::InvalidParameter("degenerate frame, try another seed".into()));
            }
            let inv_sqrt: Vec<T> = vals.iter().map(|&w| T::one() / w.sqrt()).collect();
            let w = from_spectrum(&inv_sqrt, &vecs);
            vs.iter()
                .map(|v| {
                    let u = &w * v;
                    let e = projector(&u);
                    (&e + e.adjoint()) * cr(T::lit(0.5))
                })
                .collect()
        };
        povms.push(Povm::new(effects)?);
    }
    let labels = (0..n_settings).map(|l| format!("random-{l}")).collect();
    MeasurementScheme::new(povms, vec![shots_per_setting; n_settings], labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{identity, max_abs_diff, trace_product_re};

    #[test]
    fn effects_sum_to_identity() {
        for &m in &[4usize, 6, 9] {
            let s = random_rank1_scheme::<f64>(2, 3, m, 10, 7).unwrap();
            for povm in s.povms() {
                let sum = povm
                    .effects()
                    .iter()
                    .fold(ComplexMatrix::zeros(4, 4), |a, e| a + e);
                assert!(max_abs_diff(&sum, &identity(4)) < 1e-9);
                assert_eq!(povm.num_outcomes(), m);
            }
        }
    }

    #[test]
    fn projective_qubit_case_is_orthogonal() {
        let s = random_rank1_scheme::<f64>(1, 1, 2, 10, 3).unwrap();
        let e = s.povms()[0].effects();
        assert!(trace_product_re(&e[0], &e[1]).abs() < 1e-12);
        assert!((e[0].trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_and_validated() {
        let a = random_rank1_scheme::<f64>(2, 2, 5, 10, 99).unwrap();
        let b = random_rank1_scheme::<f64>(2, 2, 5, 10, 99).unwrap();
        assert_eq!(a, b);
        assert!(random_rank1_scheme::<f64>(2, 2, 3, 10, 99).is_err());
    }
}
