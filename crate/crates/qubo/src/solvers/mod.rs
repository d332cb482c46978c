//! Ground-state search over [`QuboModel`](crate::QuboModel)s.
//!
//! Every solver is single-threaded and deterministic given its seed.

mod anneal;
mod brute;
mod extract;
mod hybrid;

use serde::{Deserialize, Serialize};

use crate::Assignment;

pub use anneal::{simulated_anneal, simulated_anneal_from, AnnealSchedule, AnnealTrace};
pub use brute::{brute_force_solve, brute_force_solve_nonempty, MAX_BRUTE_FORCE_VARS};
pub use extract::{extract_subset, influence_values, ExtractionKind, ExtractionStrategy};
pub use hybrid::{hybrid_solve, hybrid_solve_from, hybrid_solve_traced, HybridConfig, HybridTrace, InnerSolver};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub assignment: Assignment,
    pub value: f64,
    /// Objective evaluations consumed, counting each single-flip delta as one.
    pub evaluations: u64,
}
