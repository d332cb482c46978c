use qbench_statevec::StateVector;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{adjoint_gradient, forward, prediction_gradient_shift, LossKind, MlpBaseline, ParamVector, QnnConfig};
use crate::{QnnError, Result};

/// Digit 3 is the positive class, digit 6 the negative one.
pub fn label_for_digit(digit: u8) -> Option<f64> {
    match digit {
        3 => Some(1.0),
        6 => Some(-1.0),
        _ => None,
    }
}

/// Sign of the prediction; zero counts as positive.
pub fn predicted_class(pred: f64) -> f64 {
    if pred >= 0.0 { 1.0 } else { -1.0 }
}

pub fn accuracy(preds: &[f64], labels: &[f64]) -> f64 {
    let hits = preds.iter().zip(labels).filter(|(p, l)| predicted_class(**p) == **l).count();
    hits as f64 / preds.len().max(1) as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample<I> {
    pub input: I,
    /// `+1` or `-1`.
    pub label: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradientMethod {
    /// Reverse-mode sweep; exact and cheapest.
    Adjoint,
    ParameterShift,
}

/// Something trainable by [`train_holdout`].
pub trait Model: Sync {
    type Input: Sync;

    fn param_count(&self) -> usize;
    fn init_params(&self, rng: &mut ChaCha8Rng) -> Vec<f64>;
    fn predict(&self, params: &[f64], x: &Self::Input) -> Result<f64>;
    fn predict_with_gradient(&self, params: &[f64], x: &Self::Input, method: GradientMethod)
        -> Result<(f64, Vec<f64>)>;
    fn loss(&self) -> LossKind;
    fn seed(&self) -> u64;
}

impl Model for QnnConfig {
    type Input = StateVector;

    fn param_count(&self) -> usize {
        crate::count_params(self)
    }

    /// Uniform in `[0, 2π)`: at all-zero angles every gradient vanishes.
    fn init_params(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        use rand::Rng;
        (0..self.param_count()).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect()
    }

    fn predict(&self, params: &[f64], x: &StateVector) -> Result<f64> {
        forward(self, &ParamVector::from_angles(self, params.to_vec())?, x)
    }

    fn predict_with_gradient(&self, params: &[f64], x: &StateVector, method: GradientMethod) -> Result<(f64, Vec<f64>)> {
        let params = ParamVector::from_angles(self, params.to_vec())?;
        match method {
            GradientMethod::Adjoint => adjoint_gradient(self, &params, x),
            GradientMethod::ParameterShift => {
                Ok((forward(self, &params, x)?, prediction_gradient_shift(self, &params, x)?))
            }
        }
    }

    fn loss(&self) -> LossKind {
        self.loss
    }

    fn seed(&self) -> u64 {
        self.seed
    }
}

impl Model for MlpBaseline {
    type Input = Vec<f64>;

    fn param_count(&self) -> usize {
        MlpBaseline::param_count(self)
    }

    fn init_params(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        MlpBaseline::init_params(self, rng)
    }

    fn predict(&self, params: &[f64], x: &Vec<f64>) -> Result<f64> {
        self.forward(params, x)
    }

    fn predict_with_gradient(&self, params: &[f64], x: &Vec<f64>, _: GradientMethod) -> Result<(f64, Vec<f64>)> {
        self.forward(params, x)?;
        Ok(self.forward_with_gradient(params, x))
    }

    fn loss(&self) -> LossKind {
        self.loss
    }

    fn seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub folds: usize,
    pub gradient: GradientMethod,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self { learning_rate: 0.05, epochs: 30, batch_size: 32, folds: 10, gradient: GradientMethod::Adjoint }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainHistory {
    pub fold: usize,
    pub initial_val_accuracy: f64,
    /// Mean training loss over each epoch's mini-batches.
    pub train_loss: Vec<f64>,
    /// Validation accuracy after each epoch.
    pub val_accuracy: Vec<f64>,
    pub final_params: Vec<f64>,
}

impl TrainHistory {
    pub fn final_val_accuracy(&self) -> f64 {
        self.val_accuracy.last().copied().unwrap_or(self.initial_val_accuracy)
    }

    pub fn best_val_accuracy(&self) -> f64 {
        self.val_accuracy.iter().copied().fold(self.initial_val_accuracy, f64::max)
    }
}

fn fold_rng(seed: u64, fold: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fold as u64);
    rng
}

fn evaluate<M: Model>(model: &M, params: &[f64], data: &[Sample<M::Input>]) -> Result<f64> {
    let preds: Vec<f64> = data.par_iter().map(|s| model.predict(params, &s.input)).collect::<Result<_>>()?;
    let labels: Vec<f64> = data.iter().map(|s| s.label).collect();
    Ok(accuracy(&preds, &labels))
}

/// Mini-batch gradient descent on `train`, scoring `val` after every epoch.
/// Initial parameters and batch order come from the model seed and `fold`.
pub fn train_holdout<M: Model>(
    model: &M,
    train: &[Sample<M::Input>],
    val: &[Sample<M::Input>],
    opt: &OptConfig,
    fold: usize,
) -> Result<TrainHistory> {
    for s in train.iter().chain(val) {
        if s.label != 1.0 && s.label != -1.0 {
            return Err(QnnError::InvalidLabel(s.label));
        }
    }
    if !train.iter().any(|s| s.label > 0.0) || !train.iter().any(|s| s.label < 0.0) {
        return Err(QnnError::Degenerate("training data must contain both classes".into()));
    }
    if val.is_empty() {
        return Err(QnnError::Degenerate("validation set is empty".into()));
    }
    if opt.batch_size == 0 || !(opt.learning_rate > 0.0) {
        return Err(QnnError::InvalidConfig("batch size and learning rate must be positive".into()));
    }
    let mut rng = fold_rng(model.seed(), fold);
    let mut params = model.init_params(&mut rng);
    let loss = model.loss();
    let mut history = TrainHistory {
        fold,
        initial_val_accuracy: evaluate(model, &params, val)?,
        train_loss: Vec::with_capacity(opt.epochs),
        val_accuracy: Vec::with_capacity(opt.epochs),
        final_params: Vec::new(),
    };
    let mut order: Vec<usize> = (0..train.len()).collect();
    for _ in 0..opt.epochs {
        order.shuffle(&mut rng);
        let mut epoch_loss = 0.0;
        for batch in order.chunks(opt.batch_size) {
            // collected in batch order so the reduction is deterministic
            let parts: Vec<(f64, Vec<f64>)> = batch
                .par_iter()
                .map(|&i| {
                    let s = &train[i];
                    let (pred, grad) = model.predict_with_gradient(&params, &s.input, opt.gradient)?;
                    let d = loss.derivative(pred, s.label);
                    Ok((loss.value(pred, s.label), grad.into_iter().map(|g| g * d).collect()))
                })
                .collect::<Result<_>>()?;
            let step = opt.learning_rate / batch.len() as f64;
            for (l, grad) in &parts {
                epoch_loss += l;
                for (p, g) in params.iter_mut().zip(grad) {
                    *p -= step * g;
                }
            }
        }
        history.train_loss.push(epoch_loss / train.len() as f64);
        history.val_accuracy.push(evaluate(model, &params, val)?);
    }
    history.final_params = params;
    Ok(history)
}

/// Shuffled `k`-way partition of `0..n`; fold sizes differ by at most one.
pub fn kfold_partition(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 || k > n {
        return Err(QnnError::InvalidConfig(format!("cannot split {n} samples into {k} folds")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut folds = vec![Vec::with_capacity(n / k + 1); k];
    for (j, i) in idx.into_iter().enumerate() {
        folds[j % k].push(i);
    }
    Ok(folds)
}

/// One [`train_holdout`] run per fold, each validating on its held-out fold.
pub fn cross_validate<M: Model>(
    model: &M,
    data: &[Sample<M::Input>],
    opt: &OptConfig,
) -> Result<Vec<TrainHistory>>
where
    M::Input: Clone + Send,
{
    let folds = kfold_partition(data.len(), opt.folds, model.seed())?;
    (0..folds.len())
        .into_par_iter()
        .map(|f| {
            let val: Vec<_> = folds[f].iter().map(|&i| data[i].clone()).collect();
            let train: Vec<_> = folds
                .iter()
                .enumerate()
                .filter(|(g, _)| *g != f)
                .flat_map(|(_, idx)| idx.iter().map(|&i| data[i].clone()))
                .collect();
            train_holdout(model, &train, &val, opt, f)
        })
        .collect()
}
