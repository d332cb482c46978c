use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Solution;
use crate::model::FlipState;
use crate::{Assignment, QuboError, QuboModel, Result};

/// Geometric cooling schedule for Metropolis annealing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub initial_temp: f64,
    pub final_temp: f64,
    pub sweeps: u64,
    pub seed: u64,
}

impl AnnealSchedule {
    pub fn new(initial_temp: f64, final_temp: f64, sweeps: u64, seed: u64) -> Result<Self> {
        let s = Self {
            initial_temp,
            final_temp,
            sweeps,
            seed,
        };
        s.validate()?;
        Ok(s)
    }

    /// Temperatures scaled to the model: the start temperature is the mean
    /// single-flip magnitude bound `|a_i| + Σ_j |b_ij|`, the end is 1e-3 of it.
    pub fn scaled_to(model: &QuboModel, sweeps: u64, seed: u64) -> Self {
        let n = model.n();
        let mut scale: Vec<f64> = model.linear().iter().map(|a| a.abs()).collect();
        for (&(i, j), &b) in model.quadratic() {
            scale[i] += b.abs();
            scale[j] += b.abs();
        }
        let mean = if n == 0 {
            1.0
        } else {
            scale.iter().sum::<f64>() / n as f64
        };
        let t0 = if mean > 0.0 { mean } else { 1.0 };
        Self {
            initial_temp: t0,
            final_temp: t0 * 1e-3,
            sweeps,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok_temps = self.final_temp.is_finite()
            && self.initial_temp.is_finite()
            && self.final_temp > 0.0
            && self.initial_temp >= self.final_temp;
        if !ok_temps {
            return Err(QuboError::InvalidSchedule(format!(
                "need initial_temp >= final_temp > 0, got {} and {}",
                self.initial_temp, self.final_temp
            )));
        }
        if self.sweeps == 0 {
            return Err(QuboError::InvalidSchedule("sweeps must be >= 1".into()));
        }
        Ok(())
    }

    fn temperature(&self, sweep: u64) -> f64 {
        if self.sweeps == 1 {
            return self.final_temp;
        }
        let frac = sweep as f64 / (self.sweeps - 1) as f64;
        self.initial_temp * (self.final_temp / self.initial_temp).powf(frac)
    }
}

/// Best-so-far objective after each sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealTrace {
    pub best_per_sweep: Vec<f64>,
}

/// Metropolis simulated annealing from a seeded uniformly random start.
pub fn simulated_anneal(model: &QuboModel, schedule: &AnnealSchedule) -> Result<Solution> {
    schedule.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(schedule.seed);
    let start = Assignment::from_bools((0..model.n()).map(|_| rng.gen()).collect());
    Ok(run(model, schedule, start, &mut rng, None))
}

/// Annealing from a given start; also returns the best-so-far trace.
pub fn simulated_anneal_from(
    model: &QuboModel,
    schedule: &AnnealSchedule,
    start: Assignment,
) -> Result<(Solution, AnnealTrace)> {
    schedule.validate()?;
    model.check_dim(&start)?;
    let mut rng = ChaCha8Rng::seed_from_u64(schedule.seed);
    let mut trace = AnnealTrace {
        best_per_sweep: Vec::with_capacity(schedule.sweeps as usize),
    };
    let sol = run(model, schedule, start, &mut rng, Some(&mut trace));
    Ok((sol, trace))
}

fn run(
    model: &QuboModel,
    schedule: &AnnealSchedule,
    start: Assignment,
    rng: &mut ChaCha8Rng,
    mut trace: Option<&mut AnnealTrace>,
) -> Solution {
    let n = model.n();
    let mut state = FlipState::new(model, start);
    let mut best = state.x.clone();
    let mut best_value = state.value;
    let mut evaluations = 1u64;

    for sweep in 0..schedule.sweeps {
        let t = schedule.temperature(sweep);
        for i in 0..n {
            let d = state.delta(i);
            evaluations += 1;
            if d <= 0.0 || rng.gen::<f64>() < (-d / t).exp() {
                state.flip(i);
                if state.value < best_value {
                    best_value = state.value;
                    best.clone_from(&state.x);
                }
            }
        }
        if let Some(tr) = trace.as_deref_mut() {
            tr.best_per_sweep.push(best_value);
        }
    }

    Solution {
        value: model.evaluate_unchecked(&best),
        assignment: best,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::brute_force_solve;

    fn sched(seed: u64) -> AnnealSchedule {
        AnnealSchedule::new(5.0, 0.01, 200, seed).unwrap()
    }

    #[test]
    fn two_variable_optimum() {
        let m = QuboModel::from_terms(vec![1.0, -2.0], [(0, 1, 3.0)]).unwrap();
        let s = simulated_anneal(&m, &sched(1)).unwrap();
        assert_eq!(s.value, -2.0);
        assert_eq!(s.evaluations, 1 + 200 * 2);
    }

    #[test]
    fn single_positive_variable() {
        let m = QuboModel::from_terms(vec![5.0], []).unwrap();
        let s = simulated_anneal(&m, &sched(4)).unwrap();
        assert_eq!(s.assignment, Assignment::zeros(1));
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn invalid_schedules() {
        assert!(AnnealSchedule::new(1.0, 2.0, 10, 0).is_err());
        assert!(AnnealSchedule::new(1.0, 0.0, 10, 0).is_err());
        assert!(AnnealSchedule::new(1.0, 0.5, 0, 0).is_err());
        let bad = AnnealSchedule {
            initial_temp: f64::NAN,
            final_temp: 1.0,
            sweeps: 1,
            seed: 0,
        };
        let m = QuboModel::empty(2);
        assert!(matches!(
            simulated_anneal(&m, &bad),
            Err(QuboError::InvalidSchedule(_))
        ));
    }

    #[test]
    fn deterministic_and_monotone() {
        let m = QuboModel::random_dense(12, -5.0, 5.0, 5);
        let s = AnnealSchedule::scaled_to(&m, 300, 17);
        assert_eq!(simulated_anneal(&m, &s).unwrap(), simulated_anneal(&m, &s).unwrap());
        let (sol, trace) = simulated_anneal_from(&m, &s, Assignment::zeros(12)).unwrap();
        assert!(trace.best_per_sweep.windows(2).all(|w| w[1] <= w[0]));
        assert!((sol.value - m.evaluate(&sol.assignment).unwrap()).abs() < 1e-12);
        assert!(sol.value >= brute_force_solve(&m).unwrap().value - 1e-12);
    }
}
