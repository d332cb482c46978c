use thiserror::Error;

#[derive(Debug, Error)]
pub enum CreditError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: outcome code {code:?} is not 1 or 2")]
    UnknownOutcome { line: usize, code: String },
    #[error("no records")]
    Empty,
    #[error("labels contain a single class")]
    SingleClass,
    #[error("expected dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("importance threshold {0} removes every feature")]
    EmptyCandidates(f64),
    #[error("degenerate split: {0}")]
    DegenerateSplit(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown feature {0:?}")]
    UnknownFeature(String),
    #[error(transparent)]
    Qubo(#[from] qbench_qubo::QuboError),
}
