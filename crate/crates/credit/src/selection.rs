use qbench_qubo::solvers::{
    brute_force_solve_nonempty, hybrid_solve, simulated_anneal, AnnealSchedule, HybridConfig, Solution,
    MAX_BRUTE_FORCE_VARS,
};
use qbench_qubo::{Assignment, QuboModel};
use serde::{Deserialize, Serialize};

use crate::{
    feature_importance, pearson_correlation, CreditError, FeatureMatrix, ForestConfig, ImportanceReport, Result,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionConfig {
    /// Per-feature cost and weight of pairwise redundancy.
    pub alpha: f64,
    /// Reward per unit of importance.
    pub beta: f64,
    /// Weight of the soft "at least one feature" penalty reported alongside
    /// the selection. The constraint itself is enforced by the solver wrapper.
    pub big_m: f64,
    pub importance_threshold: f64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self { alpha: 0.5, beta: 2.0, big_m: 10.0, importance_threshold: 0.01 }
    }
}

impl SelectionConfig {
    fn validate(&self) -> Result<()> {
        let all = [self.alpha, self.beta, self.big_m, self.importance_threshold];
        if all.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(CreditError::InvalidConfig("selection coefficients must be finite and >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionSolver {
    /// Exhaustive search; at most 24 candidates.
    Exact,
    Anneal { sweeps: u64, seed: u64 },
    Hybrid(HybridConfig),
}

/// Minimization form: `a_i = α - β·importance_i`, `b_ij = α·|corr_ij|` for `i < j`.
pub fn build_feature_qubo(importances: &[f64], corr: &[Vec<f64>], cfg: &SelectionConfig) -> Result<QuboModel> {
    let n = importances.len();
    if corr.len() != n {
        return Err(CreditError::Dimension { expected: n, got: corr.len() });
    }
    if let Some(row) = corr.iter().find(|r| r.len() != n) {
        return Err(CreditError::Dimension { expected: n, got: row.len() });
    }
    let linear = importances.iter().map(|imp| cfg.alpha - cfg.beta * imp).collect();
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (i, j, cfg.alpha * corr[i][j].abs()));
    Ok(QuboModel::from_terms(linear, pairs)?)
}

/// Minimizes over nonempty assignments. A heuristic result of all zeros is
/// repaired by starting from the best single variable and applying
/// improving single flips that keep at least one variable set.
pub fn solve_nonempty(model: &QuboModel, solver: &SelectionSolver) -> Result<Solution> {
    let n = model.n();
    if n == 0 {
        return Err(CreditError::EmptyCandidates(f64::NAN));
    }
    let solution = match solver {
        SelectionSolver::Exact => return Ok(brute_force_solve_nonempty(model)?),
        SelectionSolver::Anneal { sweeps, seed } => {
            simulated_anneal(model, &AnnealSchedule::scaled_to(model, *sweeps, *seed))?
        }
        SelectionSolver::Hybrid(cfg) => hybrid_solve(model, cfg)?,
    };
    if solution.assignment.count_ones() > 0 {
        return Ok(solution);
    }
    let mut evaluations = solution.evaluations;
    let single = |i: usize| {
        let mut x = Assignment::zeros(n);
        x.set(i, true);
        x
    };
    let mut best = single(0);
    let mut value = model.evaluate(&best)?;
    for i in 1..n {
        let v = model.evaluate(&single(i))?;
        if v < value {
            (best, value) = (single(i), v);
        }
    }
    evaluations += n as u64;
    loop {
        let mut improved = false;
        for i in 0..n {
            if best.get(i) && best.count_ones() == 1 {
                continue;
            }
            best.flip(i);
            let v = model.evaluate(&best)?;
            evaluations += 1;
            if v < value {
                value = v;
                improved = true;
            } else {
                best.flip(i);
            }
        }
        if !improved {
            break;
        }
    }
    Ok(Solution { assignment: best, value, evaluations })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub names: Vec<String>,
    /// Column indices into the full feature matrix.
    pub columns: Vec<usize>,
    /// Columns that passed the importance threshold.
    pub candidates: Vec<String>,
    pub importance: ImportanceReport,
    pub objective: f64,
    /// `big_m · max(0, 1 - selected)`; zero for every returned selection.
    pub feasibility_penalty: f64,
}

/// Threshold filter, importance, QUBO build and solve.
pub fn select_features(
    m: &FeatureMatrix,
    forest: &ForestConfig,
    cfg: &SelectionConfig,
    solver: &SelectionSolver,
) -> Result<Selection> {
    cfg.validate()?;
    let importance = feature_importance(m, forest)?;
    let kept = importance.above(cfg.importance_threshold);
    if kept.is_empty() {
        return Err(CreditError::EmptyCandidates(cfg.importance_threshold));
    }
    let corr = pearson_correlation(m, &kept);
    let imps: Vec<f64> = kept.iter().map(|&j| importance.importances[j]).collect();
    let model = build_feature_qubo(&imps, &corr, cfg)?;
    let solver = match solver {
        SelectionSolver::Exact if model.n() > MAX_BRUTE_FORCE_VARS => {
            return Err(CreditError::InvalidConfig(format!(
                "{} candidates exceed exact-solver limit {MAX_BRUTE_FORCE_VARS}",
                model.n()
            )))
        }
        s => s,
    };
    let solution = solve_nonempty(&model, solver)?;
    let columns: Vec<usize> = solution.assignment.ones().map(|i| kept[i]).collect();
    let chosen = columns.len() as f64;
    Ok(Selection {
        names: columns.iter().map(|&j| m.names[j].clone()).collect(),
        columns,
        candidates: kept.iter().map(|&j| m.names[j].clone()).collect(),
        importance,
        objective: solution.value,
        feasibility_penalty: cfg.big_m * (1.0 - chosen).max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect()
    }

    #[test]
    fn two_uncorrelated_features() {
        let q = build_feature_qubo(&[0.9, 0.1], &identity(2), &SelectionConfig::default()).unwrap();
        assert!((q.linear()[0] + 1.3).abs() < 1e-15 && (q.linear()[1] - 0.3).abs() < 1e-15);
        let s = solve_nonempty(&q, &SelectionSolver::Exact).unwrap();
        assert_eq!(s.assignment.bits(), &[true, false]);
    }

    #[test]
    fn zero_importance_forces_cheapest_single_feature() {
        let q = build_feature_qubo(&[0.0; 4], &identity(4), &SelectionConfig::default()).unwrap();
        for solver in [SelectionSolver::Exact, SelectionSolver::Anneal { sweeps: 200, seed: 1 }] {
            let s = solve_nonempty(&q, &solver).unwrap();
            assert_eq!(s.assignment.count_ones(), 1);
            assert!((s.value - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn duplicate_features_pick_one() {
        let corr = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let q = build_feature_qubo(&[0.4, 0.4], &corr, &SelectionConfig::default()).unwrap();
        let s = solve_nonempty(&q, &SelectionSolver::Exact).unwrap();
        assert_eq!(s.assignment.bits(), &[true, false]);
    }

    #[test]
    fn dimension_checks() {
        let cfg = SelectionConfig::default();
        assert!(matches!(build_feature_qubo(&[0.1, 0.2], &identity(3), &cfg), Err(CreditError::Dimension { .. })));
        assert!(matches!(
            build_feature_qubo(&[0.1, 0.2], &[vec![1.0, 0.0], vec![0.0]], &cfg),
            Err(CreditError::Dimension { .. })
        ));
    }
}
