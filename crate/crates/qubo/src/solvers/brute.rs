use super::Solution;
use crate::model::FlipState;
use crate::{Assignment, QuboError, QuboModel, Result};

pub const MAX_BRUTE_FORCE_VARS: usize = 24;

/// Exact global minimizer by Gray-code enumeration of all `2^n` assignments.
///
/// Ties go to the lowest binary encoding (variable `i` is bit `i`).
pub fn brute_force_solve(model: &QuboModel) -> Result<Solution> {
    enumerate(model, false)
}

/// Like [`brute_force_solve`] but never returns the all-zero assignment
/// (for `n >= 1`).
pub fn brute_force_solve_nonempty(model: &QuboModel) -> Result<Solution> {
    enumerate(model, true)
}

fn enumerate(model: &QuboModel, skip_zero: bool) -> Result<Solution> {
    let n = model.n();
    if n > MAX_BRUTE_FORCE_VARS {
        return Err(QuboError::TooLarge {
            n,
            max: MAX_BRUTE_FORCE_VARS,
        });
    }
    let exact = |code: u64| model.evaluate_unchecked(&Assignment::decode(code, n));
    let total = 1u64 << n;
    let mut state = FlipState::new(model, Assignment::zeros(n));
    let mut best: Option<(u64, f64)> = None;

    for step in 0..total {
        if step > 0 {
            state.flip(step.trailing_zeros() as usize);
        }
        let code = step ^ (step >> 1);
        if skip_zero && code == 0 && n > 0 {
            continue;
        }
        let v = state.value;
        best = match best {
            None => Some((code, v)),
            Some((bc, bv)) => {
                let eps = 1e-9 * bv.abs().max(1.0);
                if v < bv - eps {
                    Some((code, v))
                } else if v <= bv + eps {
                    // Incremental values drift; settle near-ties exactly.
                    let (ev, eb) = (exact(code), exact(bc));
                    if ev < eb || (ev == eb && code < bc) {
                        Some((code, ev))
                    } else {
                        Some((bc, eb))
                    }
                } else {
                    Some((bc, bv))
                }
            }
        };
    }

    let (code, _) = best.expect("at least one assignment enumerated");
    let assignment = Assignment::decode(code, n);
    Ok(Solution {
        value: model.evaluate_unchecked(&assignment),
        assignment,
        evaluations: total,
    })
}
