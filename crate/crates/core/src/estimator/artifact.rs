use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::schemes::{scheme_digest, Granularity, MeasurementScheme};

/// A deployable affine estimator bound to one measurement scheme.
///
/// The estimate on per-setting outcome counts `n^(l)` is
/// `sum_l <a^(l), n^(l)> + constant`, and the reported interval
/// `estimate +- risk` holds with probability at least `1 - epsilon`
/// whenever the data are `repetitions[l]` i.i.d. shots of setting `l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorArtifact {
    pub scheme_digest: String,
    pub epsilon: f64,
    pub risk: f64,
    pub constant: f64,
    pub coefficients: Vec<Vec<f64>>,
    pub labels: Vec<String>,
    pub repetitions: Vec<usize>,
    #[serde(default)]
    pub functional_label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub granularity: Option<Granularity>,
    /// Certified width of the solver bracket on `2 * risk`.
    #[serde(default)]
    pub gap: f64,
}

impl EstimatorArtifact {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArtifact(m));
        if !(self.epsilon > 0.0 && self.epsilon < 0.25) {
            return bad(format!("epsilon {} outside (0, 0.25)", self.epsilon));
        }
        if !(self.risk >= 0.0) || !self.risk.is_finite() {
            return bad(format!("risk {} must be finite and nonnegative", self.risk));
        }
        if !self.constant.is_finite() {
            return bad("constant is not finite".into());
        }
        let l = self.coefficients.len();
        if l == 0 {
            return bad("no settings".into());
        }
        if self.labels.len() != l || self.repetitions.len() != l {
            return bad(format!(
                "{} coefficient vectors, {} labels, {} repetition counts",
                l,
                self.labels.len(),
                self.repetitions.len()
            ));
        }
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_empty() || a.iter().any(|v| !v.is_finite()) {
                return bad(format!("setting {i}: empty or non-finite coefficients"));
            }
        }
        if self.scheme_digest.len() != 64 || !self.scheme_digest.bytes().all(|b| b.is_ascii_hexdigit()) {
            return bad("scheme digest is not a SHA-256 hex string".into());
        }
        Ok(())
    }

    /// Fails unless the artifact was built for exactly this scheme, including
    /// its outcome counts.
    pub fn check_scheme<T: Scalar>(&self, scheme: &MeasurementScheme<T>) -> Result<()> {
        let digest = scheme_digest(scheme);
        if digest != self.scheme_digest {
            return Err(Error::DigestMismatch {
                artifact: self.scheme_digest.clone(),
                scheme: digest,
            });
        }
        let shape: Vec<usize> = self.coefficients.iter().map(Vec::len).collect();
        if shape != scheme.outcome_counts() {
            return Err(Error::InvalidArtifact(
                "coefficient lengths differ from POVM outcome counts".into(),
            ));
        }
        Ok(())
    }

    pub fn outcome_counts(&self) -> Vec<usize> {
        self.coefficients.iter().map(Vec::len).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let artifact: Self = serde_json::from_str(text)?;
        artifact.validate()?;
        Ok(artifact)
    }

    pub fn from_json_for_scheme<T: Scalar>(text: &str, scheme: &MeasurementScheme<T>) -> Result<Self> {
        let artifact = Self::from_json(text)?;
        artifact.check_scheme(scheme)?;
        Ok(artifact)
    }
}

/// Encodes and decodes through JSON; the result equals the input bit for bit.
pub fn serialize_roundtrip(artifact: &EstimatorArtifact) -> Result<EstimatorArtifact> {
    artifact.validate()?;
    EstimatorArtifact::from_json(&artifact.to_json()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::PauliString;
    use crate::schemes::{pauli_povm, Granularity};
    use crate::Povm64;

    fn artifact() -> EstimatorArtifact {
        EstimatorArtifact {
            scheme_digest: "ab".repeat(32),
            epsilon: 0.05,
            risk: 0.1234567890123456789,
            constant: 0.024,
            coefficients: vec![vec![0.0, 0.1 / 3.0], vec![-1e-300, 7.0]],
            labels: vec!["Z".into(), "X".into()],
            repetitions: vec![100, 50],
            functional_label: "fidelity".into(),
            granularity: Some(Granularity::Sign),
            gap: 3e-5,
        }
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let a = artifact();
        let b = serialize_roundtrip(&a).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.risk.to_bits(), b.risk.to_bits());
        assert_eq!(a.coefficients[1][0].to_bits(), b.coefficients[1][0].to_bits());
    }

    #[test]
    fn negative_risk_is_rejected_on_decode() {
        let text = artifact().to_json().unwrap().replace("0.12345678901234568", "-0.5");
        assert!(matches!(
            EstimatorArtifact::from_json(&text),
            Err(Error::InvalidArtifact(_))
        ));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let mut a = artifact();
        a.labels.pop();
        assert!(a.validate().is_err());
        let mut a = artifact();
        a.epsilon = 0.25;
        assert!(a.validate().is_err());
    }

    #[test]
    fn digest_binds_scheme() {
        let z: Povm64 = pauli_povm(&"Z".parse::<PauliString>().unwrap(), Granularity::Sign).unwrap();
        let scheme = MeasurementScheme::new(vec![z], vec![100], vec!["Z".into()]).unwrap();
        let mut a = artifact();
        a.coefficients.truncate(1);
        a.labels.truncate(1);
        a.repetitions.truncate(1);
        a.scheme_digest = scheme_digest(&scheme);
        a.check_scheme(&scheme).unwrap();
        let other = scheme.map_repetitions(|r| r + 1).unwrap();
        assert!(matches!(a.check_scheme(&other), Err(Error::DigestMismatch { .. })));
    }
}
