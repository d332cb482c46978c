use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("qubit {qubit} out of range for {qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, qubits: usize },
    #[error("qubit {0} used more than once in one gate")]
    QubitClash(usize),
    #[error("angle is not finite")]
    NonFiniteAngle,
    #[error("expected {expected} amplitudes, got {got}")]
    Length { expected: usize, got: usize },
    #[error("state norm {0} is not 1")]
    NotNormalized(f64),
    #[error("multi-controlled gate needs at least one control")]
    NoControls,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("circuit dump line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
