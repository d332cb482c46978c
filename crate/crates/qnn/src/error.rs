use thiserror::Error;

#[derive(Debug, Error)]
pub enum QnnError {
    #[error("expected {expected} angles, got {got}")]
    AngleCount { expected: usize, got: usize },
    #[error("input has dimension {got}, model expects {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("label must be +1 or -1, got {0}")]
    InvalidLabel(f64),
    #[error("batch is empty")]
    EmptyBatch,
    #[error("degenerate dataset: {0}")]
    Degenerate(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Image(#[from] qbench_qimage::ImageError),
    #[error(transparent)]
    State(#[from] qbench_statevec::StateError),
}
