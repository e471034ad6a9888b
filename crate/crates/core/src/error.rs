use thiserror::Error;

use crate::adapt::TraceEntry;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid Pauli word `{0}`")]
    InvalidPauli(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{n} qubits exceeds the limit of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("qubit {qubit} out of range for {n_qubits} qubits")]
    InvalidQubit { qubit: usize, n_qubits: usize },
    #[error("operation requires a {0} state")]
    WrongStateKind(&'static str),
    #[error("clique members do not pairwise qubit-wise commute")]
    NotQubitwiseCommuting,
    #[error("no measurement record for clique {0}")]
    MissingRecord(usize),
    #[error("measurement record has zero shots")]
    ZeroShots,
    #[error("cannot exponentiate the identity")]
    IdentityExponential,
    #[error("non-Hermitian Pauli generator (phase {0})")]
    NonHermitian(&'static str),
    #[error("noise amplification factor must be >= 1")]
    InvalidLambda,
    #[error("confusion matrix for qubit {qubit} is singular (det = {det:e})")]
    SingularConfusion { qubit: usize, det: f64 },
    #[error("invalid confusion matrix for qubit {qubit}: {msg}")]
    InvalidConfusion { qubit: usize, msg: String },
    #[error("degenerate extrapolation design matrix")]
    DegenerateFit,
    #[error("invalid ZNE series: {0}")]
    InvalidSeries(String),
    #[error("circuit graph does not embed in topology `{0}`")]
    NotEmbeddable(String),
    #[error("filter parameter delta must be positive")]
    InvalidDelta,
    #[error("optimizer produced a non-finite energy after {} iterations", trace.len())]
    OptimizerFailure { trace: Vec<TraceEntry> },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("topology: {0}")]
    Topology(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
