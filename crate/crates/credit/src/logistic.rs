use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{ClassReport, CreditError, FeatureMatrix, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitConfig {
    pub test_fraction: f64,
    pub seed: u64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self { test_fraction: 0.3, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    /// Weight decay on the coefficients (not the intercept).
    pub l2: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self { learning_rate: 0.1, epochs: 500, l2: 1e-3 }
    }
}

/// Per class, `round(fraction · count)` shuffled rows go to the test set.
/// Returns `(train, test)` row indices, each sorted.
pub fn stratified_split(labels: &[u8], cfg: &SplitConfig) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0) {
        return Err(CreditError::InvalidConfig(format!("test fraction {} not in (0, 1)", cfg.test_fraction)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for class in [0u8, 1] {
        let mut rows: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        rows.shuffle(&mut rng);
        let k = (rows.len() as f64 * cfg.test_fraction).round() as usize;
        test.extend_from_slice(&rows[..k]);
        train.extend_from_slice(&rows[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    pub features: Vec<String>,
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LogisticModel {
    pub fn probability(&self, row: &[f64]) -> f64 {
        let z: f64 = self.weights.iter().zip(row).map(|(w, x)| w * x).sum::<f64>() + self.bias;
        1.0 / (1.0 + (-z).exp())
    }

    /// Class 1 iff the probability is at least 0.5.
    pub fn predict(&self, row: &[f64]) -> u8 {
        (self.probability(row) >= 0.5) as u8
    }
}

/// Fits on the training part of a stratified split of `m` (already restricted
/// to the chosen columns) by full-batch gradient descent on the mean
/// log-loss, and reports on the held-out part.
pub fn train_logistic(
    m: &FeatureMatrix,
    split: &SplitConfig,
    train_cfg: &TrainConfig,
) -> Result<(LogisticModel, ClassReport)> {
    if m.cols() == 0 {
        return Err(CreditError::InvalidConfig("no features selected".into()));
    }
    let (train, test) = stratified_split(&m.labels, split)?;
    let classes = |rows: &[usize]| (rows.iter().any(|&r| m.labels[r] == 0), rows.iter().any(|&r| m.labels[r] == 1));
    if classes(&train) != (true, true) {
        return Err(CreditError::DegenerateSplit("training part lacks a class".into()));
    }
    if test.is_empty() {
        return Err(CreditError::DegenerateSplit("test part is empty".into()));
    }
    let mut model = LogisticModel { features: m.names.clone(), weights: vec![0.0; m.cols()], bias: 0.0 };
    let n = train.len() as f64;
    for _ in 0..train_cfg.epochs {
        let mut gw = vec![0.0; m.cols()];
        let mut gb = 0.0;
        for &r in &train {
            let err = model.probability(&m.values[r]) - m.labels[r] as f64;
            for (g, x) in gw.iter_mut().zip(&m.values[r]) {
                *g += err * x;
            }
            gb += err;
        }
        for (w, g) in model.weights.iter_mut().zip(&gw) {
            *w -= train_cfg.learning_rate * (g / n + train_cfg.l2 * *w);
        }
        model.bias -= train_cfg.learning_rate * gb / n;
    }
    let truth: Vec<u8> = test.iter().map(|&r| m.labels[r]).collect();
    let predicted: Vec<u8> = test.iter().map(|&r| model.predict(&m.values[r])).collect();
    Ok((model, ClassReport::from_predictions(&truth, &predicted)))
}
