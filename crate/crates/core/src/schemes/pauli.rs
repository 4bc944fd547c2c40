use super::MeasurementScheme;
use crate::error::{Error, Result};
use crate::quantum::{cr, identity, projector, ComplexMatrix, ComplexVector, Pauli, PauliString, Povm, PureState};
use crate::scalar::{Scalar, C};
use serde::{Deserialize, Serialize};

/// How much of a Pauli measurement's outcome is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    /// Which tensor-product eigenvector was observed (`2^n` outcomes).
    Eigenvector,
    /// Only the `+1` / `-1` eigenvalue (2 outcomes).
    Sign,
}

impl std::str::FromStr for Granularity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "eigenvector" => Ok(Granularity::Eigenvector),
            "sign" => Ok(Granularity::Sign),
            other => Err(Error::InvalidParameter(format!("unknown granularity {other:?}"))),
        }
    }
}

/// Eigenvector for eigenvalue `(-1)^bit` of a single-qubit Pauli; identity
/// factors are read out in the Z basis.
fn local_eigenvector<T: Scalar>(p: Pauli, bit: usize) -> ComplexVector<T> {
    let h = T::one() / T::lit(2.0).sqrt();
    let z = T::zero();
    let (a, b) = match (p, bit) {
        (Pauli::X, 0) => (C::new(h, z), C::new(h, z)),
        (Pauli::X, _) => (C::new(h, z), C::new(-h, z)),
        (Pauli::Y, 0) => (C::new(h, z), C::new(z, h)),
        (Pauli::Y, _) => (C::new(h, z), C::new(z, -h)),
        (_, 0) => (cr(T::one()), cr(z)),
        (_, _) => (cr(z), cr(T::one())),
    };
    ComplexVector::from_vec(vec![a, b])
}

/// POVM of a non-identity Pauli string; any sign on the string is ignored.
pub fn pauli_povm<T: Scalar>(pauli: &PauliString, granularity: Granularity) -> Result<Povm<T>> {
    if pauli.is_identity() {
        return Err(Error::InvalidParameter(
            "identity Pauli string carries no information".into(),
        ));
    }
    let n = pauli.num_qubits();
    match granularity {
        Granularity::Eigenvector => {
            let effects = (0..1usize << n)
                .map(|outcome| {
                    let mut v: ComplexVector<T> = ComplexVector::from_element(1, cr(T::one()));
                    for (q, &p) in pauli.ops().iter().enumerate() {
                        let bit = (outcome >> (n - 1 - q)) & 1;
                        v = v.kronecker(&local_eigenvector(p, bit));
                    }
                    projector(&v)
                })
                .collect();
            Povm::new(effects)
        }
        Granularity::Sign => {
            let w: ComplexMatrix<T> = pauli.unsigned().matrix();
            let id = identity::<T>(1 << n);
            let half = cr(T::lit(0.5));
            Povm::new(vec![(&id + &w) * half, (&id - &w) * half])
        }
    }
}

/// `tr(rho W)^2 / 2^n` for every non-identity `W`, sorted by decreasing
/// weight with ties broken lexicographically.
pub fn dfe_weights<T: Scalar>(target: &PureState<T>) -> Result<Vec<(PauliString, f64)>> {
    let d = target.dim();
    if !d.is_power_of_two() || d < 2 {
        return Err(Error::InvalidParameter(format!("dimension {d} is not a qubit register")));
    }
    let n = d.trailing_zeros() as usize;
    let psi = target.amplitudes();
    let mut out: Vec<(PauliString, f64)> = PauliString::all(n)
        .into_iter()
        .filter(|p| !p.is_identity())
        .map(|p| {
            let w: ComplexMatrix<T> = p.matrix();
            let expval = psi.dotc(&(&w * psi)).re.as_f64();
            (p, expval * expval / d as f64)
        })
        .collect();
    // weights equal up to rounding count as ties
    let key = |w: f64| (w * 1e12).round() as i64;
    out.sort_by(|a, b| {
        key(b.1)
            .cmp(&key(a.1))
            .then_with(|| a.0.ops().cmp(b.0.ops()))
    });
    Ok(out)
}

fn dfe_setting_count(fraction: f64, n: usize) -> usize {
    let total = 4f64.powi(n as i32);
    let non_identity = total - 1.0;
    let exact = fraction * total;
    if (exact - exact.round()).abs() < 1e-9 && exact.round() <= non_identity && exact.round() >= 1.0 {
        exact.round() as usize
    } else {
        ((fraction * non_identity).ceil() as usize).clamp(1, non_identity as usize)
    }
}

/// The heaviest `fraction` of DFE Pauli settings, eigenvector granularity.
pub fn dfe_weighted_scheme<T: Scalar>(
    target: &PureState<T>,
    fraction: f64,
    shots_per_setting: usize,
) -> Result<MeasurementScheme<T>> {
    dfe_weighted_scheme_with(target, fraction, shots_per_setting, Granularity::Eigenvector)
}

pub fn dfe_weighted_scheme_with<T: Scalar>(
    target: &PureState<T>,
    fraction: f64,
    shots_per_setting: usize,
    granularity: Granularity,
) -> Result<MeasurementScheme<T>> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!("fraction {fraction} outside (0, 1]")));
    }
    let weights = dfe_weights(target)?;
    let n = target.dim().trailing_zeros() as usize;
    let keep = dfe_setting_count(fraction, n);
    let chosen = &weights[..keep];
    let povms = chosen
        .iter()
        .map(|(p, _)| pauli_povm(p, granularity))
        .collect::<Result<Vec<_>>>()?;
    let labels = chosen.iter().map(|(p, _)| p.to_string()).collect();
    Ok(MeasurementScheme::new(povms, vec![shots_per_setting; keep], labels)?.with_granularity(granularity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{hermitian_eigh, random_pure_state, trace_product_re};

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn sign_povm_of_z() {
        let z = pauli_povm::<f64>(&ps("Z"), Granularity::Sign).unwrap();
        assert_eq!(z.effects()[0][(0, 0)], C::new(1.0, 0.0));
        assert_eq!(z.effects()[0][(1, 1)], C::new(0.0, 0.0));
        assert_eq!(z.effects()[1][(1, 1)], C::new(1.0, 0.0));
    }

    #[test]
    fn xx_sign_effects_have_trace_two() {
        let xx = pauli_povm::<f64>(&ps("XX"), Granularity::Sign).unwrap();
        for e in xx.effects() {
            assert!((e.trace().re - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zz_eigenvector_is_computational_basis() {
        let zz = pauli_povm::<f64>(&ps("ZZ"), Granularity::Eigenvector).unwrap();
        assert_eq!(zz.num_outcomes(), 4);
        for (k, e) in zz.effects().iter().enumerate() {
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j && i == k { 1.0 } else { 0.0 };
                    assert!((e[(i, j)] - C::new(want, 0.0)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn eigenvector_effects_carry_pauli_eigenvalue() {
        // outcome bitstring b has eigenvalue (-1)^popcount(b restricted to non-I sites)
        let p = ps("XIY");
        let w: ComplexMatrix<f64> = p.matrix();
        let povm = pauli_povm::<f64>(&p, Granularity::Eigenvector).unwrap();
        for (k, e) in povm.effects().iter().enumerate() {
            let sites = [2usize, 0];
            let parity: u32 = sites.iter().map(|&s| ((k >> s) & 1) as u32).sum();
            let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
            assert!((trace_product_re(&w, e) - sign).abs() < 1e-12);
            let ev = hermitian_eigh(e).0;
            assert!((ev[7] - 1.0).abs() < 1e-12 && ev[6].abs() < 1e-12);
        }
    }

    #[test]
    fn identity_rejected() {
        assert!(pauli_povm::<f64>(&ps("II"), Granularity::Sign).is_err());
    }

    #[test]
    fn single_qubit_dfe_ranks_z_first() {
        let one = PureState::<f64>::basis(1, 2).unwrap();
        let s = dfe_weighted_scheme(&one, 0.75, 10).unwrap();
        assert_eq!(s.num_settings(), 3);
        assert_eq!(s.labels(), &["Z", "X", "Y"]);
        let w = dfe_weights(&one).unwrap();
        assert!((w[0].1 - 0.5).abs() < 1e-15 && w[1].1 == 0.0);
    }

    #[test]
    fn four_qubit_setting_count() {
        let psi = random_pure_state::<f64>(4, 1).unwrap();
        let w = dfe_weights(&psi).unwrap();
        assert_eq!(w.len(), 255);
        assert_eq!(dfe_setting_count(0.75, 4), 192);
        assert_eq!(dfe_setting_count(0.75, 2), 12);
        assert_eq!(dfe_setting_count(0.75, 5), 768);
        assert_eq!(dfe_setting_count(1.0, 2), 15);
        assert!(dfe_weighted_scheme(&psi, 0.0, 1).is_err());
    }

    #[test]
    fn weights_sum_to_one_minus_one_over_d() {
        // brute force over all non-identity strings
        for n in 1..=3 {
            let psi = random_pure_state::<f64>(n, 100 + n as u64).unwrap();
            let total: f64 = dfe_weights(&psi).unwrap().iter().map(|(_, w)| w).sum();
            let d = (1 << n) as f64;
            assert!((total - (1.0 - 1.0 / d)).abs() < 1e-12);
        }
    }

    #[test]
    fn weights_non_increasing_with_lexicographic_ties() {
        let ghz = crate::quantum::ghz_state::<f64>(3).unwrap();
        let w = dfe_weights(&ghz).unwrap();
        for pair in w.windows(2) {
            assert!(pair[0].1 >= pair[1].1 - 1e-12);
            if (pair[0].1 - pair[1].1).abs() < 1e-12 {
                assert!(pair[0].0.ops() < pair[1].0.ops());
            }
        }
    }
}
