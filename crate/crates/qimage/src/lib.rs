//! Image preprocessing and quantum image encodings.
//!
//! A `2^n × 2^n` image uses `2n` position qubits plus one colour qubit. The
//! row-major pixel index `q = row·side + col` is stored little-endian on the
//! position qubits, and the colour qubit is the highest qubit, so the basis
//! index of `|q⟩ ⊗ |c⟩` is `q + 2^(2n)·c`.
//!
//! The compressed encoding folds the two least-significant position bits
//! (the low column bits) into the colour angle and keeps `2n - 2` position
//! qubits.

mod dataset;
mod encode;
mod error;
mod idx;
mod image;
mod preprocess;

pub use dataset::{BinaryDataset, LabeledImage};
pub use encode::{
    compressed_angle, compressed_angles, compressed_state, encode_circuit, frqi_state,
    frqi_state_from_angles, position_qubits,
};
pub use error::ImageError;
pub use idx::{load_idx_images, load_idx_labels, parse_idx_images, parse_idx_labels, IdxImages};
pub use image::{AngleField, BinaryImage, GrayImage};
pub use preprocess::{bilinear_downsample, binarize, preprocess, DEFAULT_THRESHOLD};

pub type Result<T> = std::result::Result<T, ImageError>;
