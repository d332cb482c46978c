use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::extract::extract_subset_avoiding;
use super::{brute_force_solve, simulated_anneal, AnnealSchedule, ExtractionStrategy, Solution};
use crate::{Assignment, QuboModel, Result};

/// Solver applied to each extracted sub-QUBO.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerSolver {
    Exact,
    /// Annealing with this schedule; its seed is replaced per iteration.
    Anneal(AnnealSchedule),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridConfig {
    pub strategy: ExtractionStrategy,
    pub iterations: usize,
    pub inner: InnerSolver,
    pub seed: u64,
    /// Variables flipped when the loop stagnates. `None` adapts the strength
    /// between 2 and `n / 2`; `Some(k)` fixes it; `Some(0)` disables kicks.
    #[serde(default)]
    pub kick: Option<usize>,
}

/// Per-iteration record of the hybrid loop.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HybridTrace {
    /// Incumbent value before the first iteration and after each one.
    pub incumbent: Vec<f64>,
    /// `(sub-solution value + constant, full re-evaluation of the merged assignment)`
    /// for each iteration.
    pub merges: Vec<(f64, f64)>,
}

/// Sub-QUBO decomposition loop: free a subset, fix the rest at the incumbent,
/// solve the sub-problem and keep the merged result when it is no worse.
pub fn hybrid_solve(model: &QuboModel, config: &HybridConfig) -> Result<Solution> {
    hybrid_solve_traced(model, config).map(|(s, _)| s)
}

pub fn hybrid_solve_traced(
    model: &QuboModel,
    config: &HybridConfig,
) -> Result<(Solution, HybridTrace)> {
    let n = model.n();
    if config.iterations > 0 {
        config.strategy.validate(n)?;
    }
    if let InnerSolver::Anneal(s) = &config.inner {
        s.validate()?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let start = Assignment::from_bools((0..n).map(|_| rng.gen()).collect());
    run(model, config, start, rng)
}

/// Hybrid loop from a caller-supplied starting assignment.
pub fn hybrid_solve_from(
    model: &QuboModel,
    config: &HybridConfig,
    start: Assignment,
) -> Result<(Solution, HybridTrace)> {
    model.check_dim(&start)?;
    if config.iterations > 0 {
        config.strategy.validate(model.n())?;
    }
    if let InnerSolver::Anneal(s) = &config.inner {
        s.validate()?;
    }
    run(model, config, start, ChaCha8Rng::seed_from_u64(config.seed))
}

fn run(
    model: &QuboModel,
    config: &HybridConfig,
    start: Assignment,
    mut rng: ChaCha8Rng,
) -> Result<(Solution, HybridTrace)> {
    let n = model.n();
    // Kick strength grows after each kick that fails to produce a new incumbent.
    let (kick_min, kick_max) = match config.kick {
        Some(k) => (k.min(n), k.min(n)),
        None => (2.min(n), (n / 2).max(2.min(n))),
    };
    let mut kick = kick_min;
    let mut best_at_last_kick = f64::INFINITY;
    let mut current = start;
    let mut value = model.evaluate(&current)?;
    let mut best = current.clone();
    let mut best_value = value;
    let mut evaluations = 1u64;
    let mut trace = HybridTrace {
        incumbent: vec![value],
        merges: Vec::with_capacity(config.iterations),
    };
    // Variables freed by iterations that failed to move the working point.
    let mut tabu: Vec<usize> = Vec::new();

    for _ in 0..config.iterations {
        let subset =
            extract_subset_avoiding(model, &current, &config.strategy, rng.next_u64(), &tabu)?;
        let fixed: BTreeMap<usize, u8> = (0..n)
            .filter(|i| subset.binary_search(i).is_err())
            .map(|i| (i, u8::from(current.get(i))))
            .collect();
        let sub = model.fix_variables(&fixed)?;
        let inner = match config.inner {
            InnerSolver::Exact => brute_force_solve(&sub.model)?,
            InnerSolver::Anneal(schedule) => simulated_anneal(
                &sub.model,
                &AnnealSchedule {
                    seed: rng.next_u64(),
                    ..schedule
                },
            )?,
        };
        evaluations += inner.evaluations + 1;
        let candidate = sub.merge(&inner.assignment)?;
        let candidate_value = model.evaluate(&candidate)?;
        trace.merges.push((inner.value + sub.constant, candidate_value));

        let stalled = candidate == current || candidate_value > value;
        if candidate_value <= value {
            current = candidate;
            value = candidate_value;
        }
        if value < best_value {
            best.clone_from(&current);
            best_value = value;
        }
        if !stalled {
            tabu.clear();
            trace.incumbent.push(best_value);
            continue;
        }
        for &i in &subset {
            if !tabu.contains(&i) {
                tabu.push(i);
            }
        }
        if tabu.len() >= n && kick > 0 && subset.len() < n {
            // Every variable has been freed without progress: move the working
            // point off this local optimum. The incumbent is kept.
            kick = if best_value < best_at_last_kick {
                kick_min
            } else {
                (kick + 1).min(kick_max)
            };
            best_at_last_kick = best_value;
            current.clone_from(&best);
            for i in rand::seq::index::sample(&mut rng, n, kick) {
                current.flip(i);
            }
            value = model.evaluate(&current)?;
            evaluations += 1;
            tabu.clear();
        }
        trace.incumbent.push(best_value);
    }

    Ok((
        Solution {
            assignment: best,
            value: best_value,
            evaluations,
        },
        trace,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::ExtractionKind;

    fn config(kind: ExtractionKind, size: usize, iterations: usize) -> HybridConfig {
        HybridConfig {
            strategy: ExtractionStrategy::new(kind, size),
            iterations,
            inner: InnerSolver::Exact,
            seed: 42,
            kick: None,
        }
    }

    #[test]
    fn zero_iterations_returns_start() {
        let m = QuboModel::random_dense(10, -5.0, 5.0, 1);
        let s = hybrid_solve(&m, &config(ExtractionKind::Random, 4, 0)).unwrap();
        assert_eq!(s.value, m.evaluate(&s.assignment).unwrap());
        assert_eq!(s.evaluations, 1);
    }

    #[test]
    fn full_subset_is_exact() {
        let m = QuboModel::random_dense(10, -5.0, 5.0, 2);
        let exact = brute_force_solve(&m).unwrap();
        for kind in [ExtractionKind::Random, ExtractionKind::Influence, ExtractionKind::KOpt] {
            let s = hybrid_solve(&m, &config(kind, 10, 1)).unwrap();
            assert_eq!(s.value, exact.value);
        }
    }

    #[test]
    fn anneal_inner_improves() {
        let m = QuboModel::random_dense(16, -5.0, 5.0, 3);
        let cfg = HybridConfig {
            inner: InnerSolver::Anneal(AnnealSchedule::new(10.0, 0.01, 100, 0).unwrap()),
            ..config(ExtractionKind::Random, 8, 10)
        };
        let (s, trace) = hybrid_solve_traced(&m, &cfg).unwrap();
        assert!(s.value <= trace.incumbent[0]);
        assert_eq!(s, hybrid_solve(&m, &cfg).unwrap());
    }
}
