use super::{pauli_povm, Granularity, MeasurementScheme};
use crate::error::{Error, Result};
use crate::quantum::{cr, hermitian_eigh, identity, PauliString, PureState};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// `n` commuting, independent, Hermitian Pauli generators on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerGroupSpec {
    generators: Vec<PauliString>,
}

fn gf2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in (0..64).rev() {
        let mask = 1u64 << bit;
        if let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) {
            rows.swap(rank, pivot);
            let p = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & mask != 0 {
                    *row ^= p;
                }
            }
            rank += 1;
        }
    }
    rank
}

impl StabilizerGroupSpec {
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        let n = generators
            .first()
            .map(PauliString::num_qubits)
            .ok_or_else(|| Error::InvalidStabilizer("no generators".into()))?;
        if n > 10 {
            return Err(Error::InvalidStabilizer(format!("{n} qubits exceeds the dense limit")));
        }
        if generators.len() != n {
            return Err(Error::InvalidStabilizer(format!(
                "{} generators for {n} qubits",
                generators.len()
            )));
        }
        for g in &generators {
            if g.num_qubits() != n {
                return Err(Error::InvalidStabilizer(format!("{g} has the wrong length")));
            }
            if g.sign().is_none() {
                return Err(Error::InvalidStabilizer(format!("{g} is not Hermitian")));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::InvalidStabilizer(format!("{a} and {b} anticommute")));
                }
            }
        }
        let rows = generators
            .iter()
            .map(|g| {
                let (x, z) = g.symplectic();
                x.iter()
                    .chain(&z)
                    .fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
            })
            .collect();
        if gf2_rank(rows) != n {
            return Err(Error::InvalidStabilizer("generators are not independent".into()));
        }
        Ok(Self { generators })
    }

    /// Parses a comma-separated list such as `"XX,ZZ"` or `"XZI,-ZXZ,IZX"`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let gens = s
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<PauliString>>>()?;
        Self::new(gens)
    }

    pub fn num_qubits(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    /// The `2^n - 1` non-identity group elements; element `m - 1` is the
    /// product of the generators selected by the bits of `m`.
    pub fn elements(&self) -> Vec<PauliString> {
        let n = self.num_qubits();
        (1..1usize << n)
            .map(|mask| {
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(PauliString::identity(n), |acc, i| {
                        acc.multiply(&self.generators[i]).expect("same length")
                    })
            })
            .collect()
    }

    /// The unique state with `+1` eigenvalue under every generator.
    pub fn state<T: Scalar>(&self) -> Result<PureState<T>> {
        let d = 1usize << self.num_qubits();
        let half = cr(T::lit(0.5));
        let id = identity::<T>(d);
        let proj = self
            .generators
            .iter()
            .fold(id.clone(), |acc, g| acc * ((&id + g.matrix::<T>()) * half));
        let (_, vecs) = hermitian_eigh(&crate::quantum::hermitian_part(&proj));
        PureState::normalized(vecs.column(d - 1).clone_owned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilizerMode {
    FullGroup,
    /// `k` i.i.d. uniform draws (with replacement) from the non-identity
    /// elements; repeated draws are merged into one setting.
    UniformSample { k: usize, seed: u64 },
    GeneratorSubset(Vec<usize>),
}

/// Indices into [`StabilizerGroupSpec::elements`] for `k` uniform draws.
pub fn sample_stabilizer_elements(spec: &StabilizerGroupSpec, k: usize, seed: u64) -> Vec<usize> {
    let m = (1usize << spec.num_qubits()) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| rng.random_range(0..m)).collect()
}

/// Sign-granularity scheme over stabilizer-group elements. Each effect pair
/// measures the unsigned Pauli; the element's sign is kept in the label.
pub fn stabilizer_scheme<T: Scalar>(
    spec: &StabilizerGroupSpec,
    mode: &StabilizerMode,
    shots_per_setting: usize,
) -> Result<MeasurementScheme<T>> {
    if shots_per_setting == 0 {
        return Err(Error::InvalidParameter("shots per setting must be positive".into()));
    }
    let chosen: Vec<(PauliString, usize)> = match mode {
        StabilizerMode::FullGroup => spec
            .elements()
            .into_iter()
            .map(|p| (p, shots_per_setting))
            .collect(),
        StabilizerMode::UniformSample { k, seed } => {
            if *k == 0 {
                return Err(Error::InvalidParameter("sample size must be positive".into()));
            }
            let elements = spec.elements();
            let mut merged: BTreeMap<usize, usize> = BTreeMap::new();
            for idx in sample_stabilizer_elements(spec, *k, *seed) {
                *merged.entry(idx).or_default() += shots_per_setting;
            }
            merged
                .into_iter()
                .map(|(idx, reps)| (elements[idx].clone(), reps))
                .collect()
        }
        StabilizerMode::GeneratorSubset(indices) => {
            if indices.is_empty() {
                return Err(Error::InvalidParameter("empty generator subset".into()));
            }
            indices
                .iter()
                .map(|&i| {
                    spec.generators
                        .get(i)
                        .cloned()
                        .map(|g| (g, shots_per_setting))
                        .ok_or_else(|| {
                            Error::InvalidParameter(format!("generator index {i} out of range"))
                        })
                })
                .collect::<Result<_>>()?
        }
    };
    let povms = chosen
        .iter()
        .map(|(p, _)| pauli_povm(p, Granularity::Sign))
        .collect::<Result<Vec<_>>>()?;
    let reps = chosen.iter().map(|(_, r)| *r).collect();
    let labels = chosen.iter().map(|(p, _)| p.to_string()).collect();
    Ok(MeasurementScheme::new(povms, reps, labels)?.with_granularity(Granularity::Sign))
}
