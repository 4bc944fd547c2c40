use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid measurement scheme: {0}")]
    InvalidScheme(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed Pauli string {0:?}")]
    MalformedPauli(String),

    #[error("invalid stabilizer generators: {0}")]
    InvalidStabilizer(String),

    #[error("unknown named state {0:?}")]
    UnknownState(String),

    #[error("solver did not converge: gap {gap:.3e} exceeds tolerance {tol:.3e}")]
    NotConverged { gap: f64, tol: f64 },

    #[error("dataset does not match estimator: {0}")]
    DatasetMismatch(String),

    #[error("scheme digest mismatch: artifact {artifact}, scheme {scheme}")]
    DigestMismatch { artifact: String, scheme: String },

    #[error("invalid estimator artifact: {0}")]
    InvalidArtifact(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
