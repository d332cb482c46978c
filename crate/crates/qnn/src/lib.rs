//! Quantum neural network classifiers on encoded binary images.
//!
//! Qubit layout for a model with `P` pixel qubits: pixel qubits `0..P`, the
//! colour qubit `P`, and the readout qubit `P + 1`, which starts in `|0⟩` and
//! whose `⟨Z⟩` is the prediction. Each layer holds one angle per pixel qubit,
//! shared by the two gates that couple that pixel qubit to the readout and
//! colour qubits.

mod ansatz;
mod config;
mod error;
mod loss;
mod mlp;
mod train;

pub use ansatz::{adjoint_gradient, ansatz_program, build_layer, forward, gradient, mean_loss, prediction_gradient_shift};
pub use config::{count_params, Arch, LossKind, ParamVector, QnnConfig};
pub use error::QnnError;
pub use loss::{hinge_loss, mse_loss};
pub use mlp::MlpBaseline;
pub use train::{
    accuracy, cross_validate, kfold_partition, label_for_digit, predicted_class, train_holdout, GradientMethod,
    Model, OptConfig, Sample, TrainHistory,
};

pub type Result<T> = std::result::Result<T, QnnError>;
