use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImageError {
    #[error("expected {expected} pixels, got {got}")]
    PixelCount { expected: usize, got: usize },
    #[error("pixel value is not finite")]
    NonFinite,
    #[error("image is {width}x{height}, expected a square")]
    NotSquare { width: usize, height: usize },
    #[error("side {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("side {0} is too small for the compressed encoding (need at least 4)")]
    TooSmall(usize),
    #[error("target size must be at least 1")]
    ZeroTarget,
    #[error("angle {0} outside [0, pi/2]")]
    AngleRange(f64),
    #[error("malformed IDX data: {0}")]
    Idx(String),
    #[error("malformed dataset file: {0}")]
    Dataset(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    State(#[from] qbench_statevec::StateError),
}
