//! Quadratic unconstrained binary optimization.
//!
//! The objective over binary variables `x_i ∈ {0,1}` is
//!
//! ```text
//! f(x) = offset + Σ_i a_i x_i + Σ_{i<j} b_ij x_i x_j
//! ```
//!
//! where every unordered pair `(i, j)` is stored once and contributes once.
//! Variable `i` is bit `i` of an assignment's binary encoding, so the
//! assignment `(1, 0)` encodes to `1` and `(0, 1)` to `2`.

mod error;
pub mod format;
mod ising;
mod model;
pub mod solvers;
mod subqubo;

pub use error::QuboError;
pub use ising::IsingModel;
pub use model::{Assignment, QuboModel};
pub use subqubo::SubQubo;

pub type Result<T> = std::result::Result<T, QuboError>;
