//! Dense statevector simulation.
//!
//! Qubit `k` is bit `k` of the basis-state index (little-endian): on three
//! qubits, `|q2 q1 q0⟩ = |011⟩` is index 3 and has qubits 0 and 1 set.
//!
//! Parameterized two-qubit rotations use `XX(θ) = exp(-iθ/2 · X⊗X)` and
//! `ZZ(θ) = exp(-iθ/2 · Z⊗Z)`.

mod circuit;
mod decompose;
mod error;
mod gate;
mod state;
mod unitary;

pub use circuit::{parse_program, CircuitProgram};
pub use decompose::{decompose_multi_controlled, decomposition_gate_count, stated_gate_count};
pub use error::StateError;
pub use gate::{GateOp, SingleQubit};
pub use state::StateVector;
pub use unitary::Unitary2;

pub use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, StateError>;
