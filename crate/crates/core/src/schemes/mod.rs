//! Measurement-scheme constructors.

mod json;
mod pauli;
mod random;
mod stabilizer;
mod target;

pub use json::{scheme_digest, CompactRepetitions, SchemeFile, SettingFile};
pub use pauli::{dfe_weighted_scheme, dfe_weighted_scheme_with, dfe_weights, pauli_povm, Granularity};
pub use random::random_rank1_scheme;
pub use stabilizer::{
    sample_stabilizer_elements, stabilizer_scheme, StabilizerGroupSpec, StabilizerMode,
};
pub use target::target_basis_scheme;

use crate::error::{Error, Result};
use crate::quantum::Povm;
use crate::scalar::Scalar;

/// `L` measurement settings, each a POVM repeated `R_l` times.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementScheme<T: Scalar> {
    povms: Vec<Povm<T>>,
    repetitions: Vec<usize>,
    labels: Vec<String>,
    granularity: Option<Granularity>,
}

impl<T: Scalar> MeasurementScheme<T> {
    pub fn new(povms: Vec<Povm<T>>, repetitions: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if povms.is_empty() {
            return Err(Error::InvalidScheme("at least one setting required".into()));
        }
        if repetitions.len() != povms.len() || labels.len() != povms.len() {
            return Err(Error::InvalidScheme(format!(
                "{} POVMs, {} repetition counts, {} labels",
                povms.len(),
                repetitions.len(),
                labels.len()
            )));
        }
        let d = povms[0].dim();
        if let Some(l) = povms.iter().position(|p| p.dim() != d) {
            return Err(Error::InvalidScheme(format!("setting {l} has a different dimension")));
        }
        if let Some(l) = repetitions.iter().position(|&r| r == 0) {
            return Err(Error::InvalidScheme(format!("setting {l} has zero repetitions")));
        }
        Ok(Self {
            povms,
            repetitions,
            labels,
            granularity: None,
        })
    }

    pub(crate) fn with_granularity(mut self, g: Granularity) -> Self {
        self.granularity = Some(g);
        self
    }

    pub fn dim(&self) -> usize {
        self.povms[0].dim()
    }

    pub fn num_settings(&self) -> usize {
        self.povms.len()
    }

    pub fn povms(&self) -> &[Povm<T>] {
        &self.povms
    }

    pub fn repetitions(&self) -> &[usize] {
        &self.repetitions
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn granularity(&self) -> Option<Granularity> {
        self.granularity
    }

    pub fn outcome_counts(&self) -> Vec<usize> {
        self.povms.iter().map(Povm::num_outcomes).collect()
    }

    pub fn total_shots(&self) -> usize {
        self.repetitions.iter().sum()
    }

    /// Same settings, every `R_l` replaced by `f(R_l)`.
    pub fn map_repetitions(&self, f: impl Fn(usize) -> usize) -> Result<Self> {
        let mut out = Self::new(
            self.povms.clone(),
            self.repetitions.iter().map(|&r| f(r)).collect(),
            self.labels.clone(),
        )?;
        out.granularity = self.granularity;
        Ok(out)
    }

    /// Keep only the listed settings, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut povms = Vec::with_capacity(indices.len());
        let mut reps = Vec::with_capacity(indices.len());
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.num_settings() {
                return Err(Error::InvalidScheme(format!("setting index {i} out of range")));
            }
            povms.push(self.povms[i].clone());
            reps.push(self.repetitions[i]);
            labels.push(self.labels[i].clone());
        }
        let mut out = Self::new(povms, reps, labels)?;
        out.granularity = self.granularity;
        Ok(out)
    }
}
