//! Random-forest Gini importance (mean decrease in impurity).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{CreditError, FeatureMatrix, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestConfig {
    pub trees: usize,
    pub max_depth: usize,
    pub seed: u64,
    /// Features tried per split; `None` means `floor(sqrt(p))`.
    pub max_features: Option<usize>,
}

impl Default for ForestConfig {
    fn default() -> Self {
        Self { trees: 100, max_depth: 8, seed: 0, max_features: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceReport {
    pub names: Vec<String>,
    /// Non-negative, summing to 1.
    pub importances: Vec<f64>,
}

impl ImportanceReport {
    /// Indices whose importance is at least `threshold`.
    pub fn above(&self, threshold: f64) -> Vec<usize> {
        (0..self.importances.len()).filter(|&j| self.importances[j] >= threshold).collect()
    }

    /// Indices sorted by decreasing importance, ties by index.
    pub fn ranking(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.importances.len()).collect();
        idx.sort_by(|&a, &b| self.importances[b].total_cmp(&self.importances[a]).then(a.cmp(&b)));
        idx
    }
}

/// Per-tree impurity decreases, each tree normalized to sum 1, averaged over
/// trees and renormalized. Trees use bootstrap samples of full size.
pub fn feature_importance(m: &FeatureMatrix, cfg: &ForestConfig) -> Result<ImportanceReport> {
    if m.rows() == 0 {
        return Err(CreditError::Empty);
    }
    if !m.labels.iter().any(|&l| l == 0) || !m.labels.iter().any(|&l| l == 1) {
        return Err(CreditError::SingleClass);
    }
    if cfg.trees == 0 {
        return Err(CreditError::InvalidConfig("forest needs at least one tree".into()));
    }
    let p = m.cols();
    let tries = cfg.max_features.unwrap_or(((p as f64).sqrt() as usize).max(1)).clamp(1, p.max(1));
    let per_tree: Vec<Vec<f64>> = (0..cfg.trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(t as u64);
            let sample: Vec<usize> = (0..m.rows()).map(|_| rng.gen_range(0..m.rows())).collect();
            let mut grower = Grower { m, tries, max_depth: cfg.max_depth, rng, decrease: vec![0.0; p] };
            grower.grow(sample, 0);
            normalized(grower.decrease)
        })
        .collect();
    let mut total = vec![0.0; p];
    for tree in &per_tree {
        for (t, v) in total.iter_mut().zip(tree) {
            *t += v;
        }
    }
    let importances = normalized(total);
    if importances.iter().all(|&v| v == 0.0) {
        return Err(CreditError::InvalidConfig("no tree found a split".into()));
    }
    Ok(ImportanceReport { names: m.names.clone(), importances })
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
    v
}

fn gini(n0: usize, n1: usize) -> f64 {
    let n = (n0 + n1) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let (p0, p1) = (n0 as f64 / n, n1 as f64 / n);
    1.0 - p0 * p0 - p1 * p1
}

struct Grower<'a> {
    m: &'a FeatureMatrix,
    tries: usize,
    max_depth: usize,
    rng: ChaCha8Rng,
    decrease: Vec<f64>,
}

struct Split {
    feature: usize,
    threshold: f64,
    gain: f64,
}

impl Grower<'_> {
    fn grow(&mut self, rows: Vec<usize>, depth: usize) {
        let n1 = rows.iter().filter(|&&r| self.m.labels[r] == 1).count();
        let n0 = rows.len() - n1;
        if depth >= self.max_depth || rows.len() < 2 || n0 == 0 || n1 == 0 {
            return;
        }
        let Some(split) = self.best_split(&rows, n0, n1) else { return };
        self.decrease[split.feature] += split.gain;
        let (left, right): (Vec<usize>, Vec<usize>) =
            rows.into_iter().partition(|&r| self.m.values[r][split.feature] <= split.threshold);
        self.grow(left, depth + 1);
        self.grow(right, depth + 1);
    }

    /// Visits features in random order until `tries` non-constant ones have
    /// been scored.
    fn best_split(&mut self, rows: &[usize], n0: usize, n1: usize) -> Option<Split> {
        let parent = rows.len() as f64 * gini(n0, n1);
        let mut order: Vec<usize> = (0..self.m.cols()).collect();
        order.shuffle(&mut self.rng);
        let mut scored = 0;
        let mut best: Option<Split> = None;
        let mut pairs: Vec<(f64, u8)> = Vec::with_capacity(rows.len());
        for f in order {
            if scored == self.tries {
                break;
            }
            pairs.clear();
            pairs.extend(rows.iter().map(|&r| (self.m.values[r][f], self.m.labels[r])));
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            if pairs[0].0 == pairs[pairs.len() - 1].0 {
                continue;
            }
            scored += 1;
            let (mut l0, mut l1) = (0usize, 0usize);
            for k in 0..pairs.len() - 1 {
                if pairs[k].1 == 1 { l1 += 1 } else { l0 += 1 }
                if pairs[k].0 == pairs[k + 1].0 {
                    continue;
                }
                let left = (l0 + l1) as f64 * gini(l0, l1);
                let right = (n0 - l0 + n1 - l1) as f64 * gini(n0 - l0, n1 - l1);
                // gain weighted by node size relative to the whole data set
                let gain = (parent - left - right) / self.m.rows() as f64;
                if best.as_ref().is_none_or(|b| gain > b.gain) {
                    best = Some(Split { feature: f, threshold: (pairs[k].0 + pairs[k + 1].0) / 2.0, gain });
                }
            }
        }
        best.filter(|b| b.gain > 0.0)
    }
}
