use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix that must be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian: max |A[j][k] - conj(A[k][j])| = {max_violation:.3e}")]
    NotHermitian { max_violation: f64 },

    /// A grid function or operator entry evaluated to NaN or infinity.
    #[error("non-finite value {value} encountered at grid point {point}")]
    NonFiniteValue { value: f64, point: f64 },

    /// Matrix or circuit dimensions do not line up.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A matrix operation required a power-of-two dimension.
    #[error("dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },

    /// Grid construction arguments were invalid.
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },

    /// Qubit counts of two objects disagree.
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    /// Requested register exceeds the simulator cap.
    #[error("{requested} qubits requested, simulator supports at most {max}")]
    TooManyQubits { requested: usize, max: usize },

    /// A qubit index was out of range for the register.
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    /// Parameter binding received the wrong number of values.
    #[error("expected {expected} parameters, got {actual}")]
    ParameterCountMismatch { expected: usize, actual: usize },

    /// A Pauli string label contained a character outside I, X, Y, Z.
    #[error("invalid Pauli label character '{0}'")]
    InvalidPauliLabel(char),

    /// A model name did not match any known kind.
    #[error("unknown model '{0}'")]
    UnknownModel(String),

    /// A basis name did not match any known decomposition basis.
    #[error("unknown basis '{0}', expected 'table' or 'plain'")]
    UnknownBasis(String),

    /// A model build was missing a required parameter.
    #[error("missing required model parameter '{0}'")]
    MissingParameter(&'static str),

    /// No published parameter set exists for the requested model.
    #[error("no published parameter set for model '{0}'")]
    NoPublishedInstance(String),

    /// The objective returned NaN or infinity during optimization.
    #[error("objective returned a non-finite value at iteration {iteration}")]
    NonFiniteObjective { iteration: usize },

    /// Step-size calibration found a flat objective in every probe direction.
    #[error("all calibration probes produced a zero gradient estimate")]
    ZeroGradientRegion,

    /// The iterative eigensolver failed to converge.
    #[error("eigensolver failed to converge for eigenvalue index {index}")]
    NoConvergence { index: usize },
}
