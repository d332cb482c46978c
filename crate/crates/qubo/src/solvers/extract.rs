use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::FlipState;
use crate::{Assignment, QuboError, QuboModel, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtractionKind {
    Random,
    Influence,
    KOpt,
}

/// How the hybrid loop picks the free variables of each sub-QUBO.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionStrategy {
    pub kind: ExtractionKind,
    pub subset_size: usize,
    /// Maximum number of simultaneous flips per move (k-opt only).
    pub k: usize,
}

impl ExtractionStrategy {
    pub fn new(kind: ExtractionKind, subset_size: usize) -> Self {
        Self {
            kind,
            subset_size,
            k: 2,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.subset_size == 0 || self.subset_size > n {
            return Err(QuboError::InvalidStrategy(format!(
                "subset size {} not in 1..={n}",
                self.subset_size
            )));
        }
        if self.k == 0 {
            return Err(QuboError::InvalidStrategy("k must be >= 1".into()));
        }
        Ok(())
    }
}

/// Signed single-flip deltas: entry `i` is `f(flip_i(x)) - f(x)`.
pub fn influence_values(model: &QuboModel, current: &Assignment) -> Result<Vec<f64>> {
    model.check_dim(current)?;
    let state = FlipState::new(model, current.clone());
    Ok((0..model.n()).map(|i| state.delta(i)).collect())
}

/// Picks `strategy.subset_size` variable indices to free, returned in ascending order.
pub fn extract_subset(
    model: &QuboModel,
    current: &Assignment,
    strategy: &ExtractionStrategy,
    seed: u64,
) -> Result<Vec<usize>> {
    extract_subset_avoiding(model, current, strategy, seed, &[])
}

/// [`extract_subset`] with a set of deprioritized (tabu) variables: they are
/// only chosen once the non-tabu variables run out. Random and padding picks
/// draw from the non-tabu pool first; influence ranking puts tabu variables
/// last; k-opt moves may still touch them.
pub fn extract_subset_avoiding(
    model: &QuboModel,
    current: &Assignment,
    strategy: &ExtractionStrategy,
    seed: u64,
    tabu: &[usize],
) -> Result<Vec<usize>> {
    model.check_dim(current)?;
    let n = model.n();
    strategy.validate(n)?;
    let size = strategy.subset_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut is_tabu = vec![false; n];
    for &i in tabu {
        if i < n {
            is_tabu[i] = true;
        }
    }

    let mut chosen = match strategy.kind {
        ExtractionKind::Random if tabu.is_empty() => {
            rand::seq::index::sample(&mut rng, n, size).into_vec()
        }
        ExtractionKind::Random => fill_random(Vec::new(), size, &is_tabu, &mut rng),
        ExtractionKind::Influence => {
            let infl = influence_values(model, current)?;
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| {
                is_tabu[i]
                    .cmp(&is_tabu[j])
                    .then(infl[j].abs().partial_cmp(&infl[i].abs()).unwrap())
                    .then(i.cmp(&j))
            });
            order.truncate(size);
            order
        }
        ExtractionKind::KOpt => {
            let mut touched = kopt_pass(model, current, strategy.k, size, &mut rng);
            touched.truncate(size);
            fill_random(touched, size, &is_tabu, &mut rng)
        }
    };
    chosen.sort_unstable();
    Ok(chosen)
}

/// Pads `chosen` up to `size` with random unchosen variables, non-tabu first.
fn fill_random(
    mut chosen: Vec<usize>,
    size: usize,
    is_tabu: &[bool],
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    for want_tabu in [false, true] {
        if chosen.len() >= size {
            break;
        }
        let mut pool: Vec<usize> = (0..is_tabu.len())
            .filter(|&i| is_tabu[i] == want_tabu && !chosen.contains(&i))
            .collect();
        pool.shuffle(rng);
        let need = size - chosen.len();
        chosen.extend(pool.into_iter().take(need));
    }
    chosen
}

/// One first-improvement pass of sequential k-flip local search over a seeded
/// variable order. Returns the variables touched by accepted moves, in order.
fn kopt_pass(
    model: &QuboModel,
    current: &Assignment,
    k: usize,
    wanted: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let n = model.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut state = FlipState::new(model, current.clone());
    let mut touched = Vec::new();
    let mut seen = vec![false; n];

    for pos in 0..n {
        if touched.len() >= wanted {
            break;
        }
        let mut mv = vec![order[pos]];
        if let Some(found) = improving_move(&mut state, &order, pos, &mut mv, 0.0, k) {
            for &i in &found {
                state.flip(i);
                if !seen[i] {
                    seen[i] = true;
                    touched.push(i);
                }
            }
        }
    }
    touched
}

/// Depth-first search for the first move of at most `k` flips, starting with
/// `mv[0]` and extending with later variables in `order`, whose total delta is
/// negative. `acc` is the delta of the flips in `mv` before the last one.
fn improving_move(
    state: &mut FlipState,
    order: &[usize],
    last_pos: usize,
    mv: &mut Vec<usize>,
    acc: f64,
    k: usize,
) -> Option<Vec<usize>> {
    let head = *mv.last().unwrap();
    let total = acc + state.delta(head);
    if total < -1e-12 {
        return Some(mv.clone());
    }
    if mv.len() >= k {
        return None;
    }
    // Apply the head flip so deeper deltas see it, undo afterwards.
    state.flip(head);
    let mut result = None;
    for pos in (last_pos + 1)..order.len() {
        mv.push(order[pos]);
        result = improving_move(state, order, pos, mv, total, k);
        mv.pop();
        if result.is_some() {
            break;
        }
    }
    state.flip(head);
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(b: &[u8]) -> Assignment {
        Assignment::from_bits(b).unwrap()
    }

    #[test]
    fn influence_examples() {
        let m = QuboModel::from_terms(vec![1.0, -2.0], [(0, 1, 3.0)]).unwrap();
        assert_eq!(influence_values(&m, &bits(&[0, 0])).unwrap(), vec![1.0, -2.0]);
        // f(0,1) - f(1,1) = -2 - 2 and f(1,0) - f(1,1) = 1 - 2
        assert_eq!(influence_values(&m, &bits(&[1, 1])).unwrap(), vec![-4.0, -1.0]);
        assert_eq!(
            influence_values(&QuboModel::empty(3), &bits(&[1, 0, 1])).unwrap(),
            vec![0.0; 3]
        );
        assert!(influence_values(&m, &bits(&[1])).is_err());
    }

    #[test]
    fn influence_matches_direct_evaluation() {
        let m = QuboModel::random_dense(10, -5.0, 5.0, 8);
        let x = Assignment::decode(0b1011001110, 10);
        let f = m.evaluate(&x).unwrap();
        for (i, d) in influence_values(&m, &x).unwrap().into_iter().enumerate() {
            let mut y = x.clone();
            y.flip(i);
            assert!((m.evaluate(&y).unwrap() - f - d).abs() < 1e-12);
        }
    }

    #[test]
    fn influence_subset() {
        let m = QuboModel::from_terms(vec![1.0, -2.0, 0.0], []).unwrap();
        let s = ExtractionStrategy::new(ExtractionKind::Influence, 2);
        assert_eq!(extract_subset(&m, &bits(&[0, 0, 0]), &s, 0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn full_subset_for_every_kind() {
        let m = QuboModel::random_dense(6, -1.0, 1.0, 2);
        let x = Assignment::zeros(6);
        for kind in [ExtractionKind::Random, ExtractionKind::Influence, ExtractionKind::KOpt] {
            let s = ExtractionStrategy::new(kind, 6);
            assert_eq!(extract_subset(&m, &x, &s, 3).unwrap(), (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn seeded_subsets_are_reproducible() {
        let m = QuboModel::random_dense(20, -5.0, 5.0, 2);
        let x = Assignment::decode(0xABCDE, 20);
        for kind in [ExtractionKind::Random, ExtractionKind::KOpt] {
            let s = ExtractionStrategy::new(kind, 7);
            let a = extract_subset(&m, &x, &s, 99).unwrap();
            assert_eq!(a, extract_subset(&m, &x, &s, 99).unwrap());
            assert_eq!(a.len(), 7);
            assert!(a.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn kopt_finds_pair_moves() {
        // No single flip improves from zero; flipping both does.
        let m = QuboModel::from_terms(vec![1.0, 1.0, 5.0], [(0, 1, -3.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let touched = kopt_pass(&m, &Assignment::zeros(3), 2, 3, &mut rng);
        let mut t = touched.clone();
        t.sort();
        assert_eq!(t, vec![0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(kopt_pass(&m, &Assignment::zeros(3), 1, 3, &mut rng).is_empty());
    }

    #[test]
    fn tabu_variables_come_last() {
        let m = QuboModel::from_terms(vec![5.0, -4.0, 3.0, 0.5], []).unwrap();
        let x = Assignment::zeros(4);
        let s = ExtractionStrategy::new(ExtractionKind::Influence, 2);
        assert_eq!(extract_subset(&m, &x, &s, 0).unwrap(), vec![0, 1]);
        assert_eq!(extract_subset_avoiding(&m, &x, &s, 0, &[0]).unwrap(), vec![1, 2]);
        assert_eq!(extract_subset_avoiding(&m, &x, &s, 0, &[0, 1, 2]).unwrap(), vec![0, 3]);

        let s = ExtractionStrategy::new(ExtractionKind::Random, 2);
        for seed in 0..10 {
            assert_eq!(extract_subset_avoiding(&m, &x, &s, seed, &[0, 1]).unwrap(), vec![2, 3]);
            let three = ExtractionStrategy::new(ExtractionKind::Random, 3);
            let got = extract_subset_avoiding(&m, &x, &three, seed, &[0, 1]).unwrap();
            assert!(got.contains(&2) && got.contains(&3));
        }
    }

    #[test]
    fn invalid_strategies() {
        let m = QuboModel::empty(4);
        let x = Assignment::zeros(4);
        for s in [
            ExtractionStrategy::new(ExtractionKind::Random, 0),
            ExtractionStrategy::new(ExtractionKind::Random, 5),
            ExtractionStrategy { k: 0, ..ExtractionStrategy::new(ExtractionKind::KOpt, 2) },
        ] {
            assert!(matches!(
                extract_subset(&m, &x, &s, 0),
                Err(QuboError::InvalidStrategy(_))
            ));
        }
    }
}
