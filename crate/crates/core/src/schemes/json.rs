use super::{pauli_povm, Granularity, MeasurementScheme};
use crate::error::{Error, Result};
use crate::quantum::{matrix_from_json, matrix_to_json, JsonMatrix, PauliString, Povm};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingFile {
    pub label: String,
    pub repetitions: usize,
    pub effects: Vec<JsonMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CompactRepetitions {
    Uniform(usize),
    PerSetting(Vec<usize>),
}

/// On-disk scheme. The compact Pauli form is expanded on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchemeFile {
    Full {
        dim: usize,
        settings: Vec<SettingFile>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        granularity: Option<Granularity>,
    },
    Compact {
        paulis: Vec<String>,
        granularity: Granularity,
        repetitions: CompactRepetitions,
    },
}

impl SchemeFile {
    pub fn from_scheme<T: Scalar>(scheme: &MeasurementScheme<T>) -> Self {
        SchemeFile::Full {
            dim: scheme.dim(),
            settings: scheme
                .povms()
                .iter()
                .zip(scheme.repetitions())
                .zip(scheme.labels())
                .map(|((povm, &repetitions), label)| SettingFile {
                    label: label.clone(),
                    repetitions,
                    effects: povm.effects().iter().map(matrix_to_json).collect(),
                })
                .collect(),
            granularity: scheme.granularity(),
        }
    }

    pub fn to_scheme<T: Scalar>(&self) -> Result<MeasurementScheme<T>> {
        match self {
            SchemeFile::Full {
                dim,
                settings,
                granularity,
            } => {
                let povms = settings
                    .iter()
                    .map(|s| {
                        let effects = s
                            .effects
                            .iter()
                            .map(|m| matrix_from_json(m, *dim))
                            .collect::<Result<Vec<_>>>()?;
                        Povm::new(effects)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut scheme = MeasurementScheme::new(
                    povms,
                    settings.iter().map(|s| s.repetitions).collect(),
                    settings.iter().map(|s| s.label.clone()).collect(),
                )?;
                if let Some(g) = granularity {
                    scheme = scheme.with_granularity(*g);
                }
                Ok(scheme)
            }
            SchemeFile::Compact {
                paulis,
                granularity,
                repetitions,
            } => {
                let reps = match repetitions {
                    CompactRepetitions::Uniform(r) => vec![*r; paulis.len()],
                    CompactRepetitions::PerSetting(v) => v.clone(),
                };
                let strings = paulis
                    .iter()
                    .map(|s| s.parse::<PauliString>())
                    .collect::<Result<Vec<_>>>()?;
                if let Some(p) = strings.iter().find(|p| p.num_qubits() != strings[0].num_qubits()) {
                    return Err(Error::InvalidScheme(format!("{p} has a different length")));
                }
                let povms = strings
                    .iter()
                    .map(|p| pauli_povm(p, *granularity))
                    .collect::<Result<Vec<_>>>()?;
                Ok(MeasurementScheme::new(povms, reps, paulis.clone())?.with_granularity(*granularity))
            }
        }
    }
}

/// SHA-256 over a canonical text rendering of the scheme: settings in order,
/// each with label, repetitions and every effect entry as 17 significant
/// digits.
pub fn scheme_digest<T: Scalar>(scheme: &MeasurementScheme<T>) -> String {
    let mut text = String::new();
    let _ = write!(text, "dim={};settings={};", scheme.dim(), scheme.num_settings());
    for ((povm, reps), label) in scheme
        .povms()
        .iter()
        .zip(scheme.repetitions())
        .zip(scheme.labels())
    {
        let _ = write!(text, "label={label:?};repetitions={reps};outcomes={};", povm.num_outcomes());
        for e in povm.effects() {
            for z in e.iter() {
                let _ = write!(text, "{:.16e},{:.16e};", z.re.as_f64() + 0.0, z.im.as_f64() + 0.0);
            }
        }
    }
    hex::encode(Sha256::digest(text.as_bytes()))
}
