use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use qbench_qimage::{
    compressed_state, encode_circuit, frqi_state, parse_idx_images, parse_idx_labels, BinaryDataset,
    DEFAULT_THRESHOLD,
};
use qbench_qnn::{
    cross_validate, train_holdout, GradientMethod, LossKind, MlpBaseline, Model, OptConfig, QnnConfig, Sample,
    TrainHistory,
};
use qbench_statevec::GateOp;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::record::{digest, read_input, DatasetDigest, Outputs};
use crate::{Context, RunOutput};

#[derive(Debug, Subcommand)]
pub enum MnistCmd {
    /// Filter digits, downsample and binarize IDX files into a packed dataset.
    Preprocess(PreprocessArgs),
    /// Emit the encoding circuit of one dataset image.
    Encode(EncodeArgs),
    /// Train a classifier with k-fold cross-validation or a fixed holdout.
    Train(TrainArgs),
}

impl MnistCmd {
    pub fn run(self, ctx: &Context) -> Result<RunOutput> {
        match self {
            MnistCmd::Preprocess(a) => preprocess(a, ctx),
            MnistCmd::Encode(a) => encode(a, ctx),
            MnistCmd::Train(a) => train(a, ctx),
        }
    }
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    /// IDX image file, optionally gzipped.
    #[arg(long)]
    images: PathBuf,
    /// IDX label file, optionally gzipped.
    #[arg(long)]
    labels: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "3,6")]
    digits: Vec<u8>,
    /// Output side length in pixels (a power of two).
    #[arg(long, default_value_t = 8)]
    size: usize,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Directory receiving `dataset.qbim` and `manifest.json`.
    #[arg(long, default_value = "mnist")]
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct Manifest {
    digits: Vec<u8>,
    side: usize,
    threshold: f64,
    seed: u64,
    total: usize,
    counts: Vec<DigitCount>,
    sources: Vec<DatasetDigest>,
}

#[derive(Debug, Serialize)]
struct DigitCount {
    digit: u8,
    count: usize,
}

fn preprocess(a: PreprocessArgs, ctx: &Context) -> Result<RunOutput> {
    if a.digits.is_empty() {
        return Err(CliError::InvalidConfig("--digits is empty".into()));
    }
    let image_bytes = read_input(&a.images)?;
    let label_bytes = read_input(&a.labels)?;
    let images = parse_idx_images(&image_bytes)?;
    let labels = parse_idx_labels(&label_bytes)?;
    let data = BinaryDataset::from_idx(&images, &labels, &a.digits, a.size, a.threshold)?;

    let digits: Vec<u8> = a.digits.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let counts: Vec<DigitCount> =
        digits.iter().map(|&digit| DigitCount { digit, count: data.count_label(digit) }).collect();
    let sources = vec![digest(&a.images, &image_bytes), digest(&a.labels, &label_bytes)];
    let dir = ctx.resolve(&a.out);
    let manifest = Manifest {
        digits: digits.clone(),
        side: a.size,
        threshold: a.threshold,
        seed: ctx.seed,
        total: data.len(),
        counts,
        sources,
    };
    let mut outputs = Outputs::default();
    outputs.add(dir.join("dataset.qbim"), data.to_bytes());
    outputs.add_json(dir.join("manifest.json"), &manifest)?;
    Ok(RunOutput {
        name: "mnist-preprocess",
        config: json!({ "digits": digits, "size": a.size, "threshold": a.threshold }),
        datasets: vec![digest(&a.images, &image_bytes), digest(&a.labels, &label_bytes)],
        metrics: json!({ "total": manifest.total, "counts": manifest.counts }),
        outputs,
    })
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Packed dataset written by `mnist preprocess`.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Fold the two low column bits into the colour angle.
    #[arg(long)]
    compressed: bool,
    /// Expand multi-controlled rotations into singly-controlled gates.
    #[arg(long)]
    decompose: bool,
    /// Circuit dump, one gate per line.
    #[arg(long, alias = "dump", default_value = "circuit.txt")]
    out: PathBuf,
}

fn encode(a: EncodeArgs, ctx: &Context) -> Result<RunOutput> {
    let (data, source) = load_dataset(&a.data)?;
    let sample = data.samples.get(a.index).ok_or_else(|| {
        CliError::InvalidConfig(format!("index {} out of range for {} samples", a.index, data.len()))
    })?;
    let mut circuit = encode_circuit(&sample.image, a.compressed)?;
    if a.decompose {
        circuit = circuit.decomposed().map_err(qbench_qimage::ImageError::from)?;
    }
    let direct = if a.compressed { compressed_state(&sample.image)? } else { frqi_state(&sample.image)? };
    let simulated = circuit.run().map_err(qbench_qimage::ImageError::from)?;
    let fidelity = simulated.inner(&direct).norm_sqr();
    let multi = circuit.count_where(|op| matches!(op, GateOp::MultiControlled { .. }));

    let mut outputs = Outputs::default();
    outputs.add(ctx.resolve(&a.out), circuit.dump().into_bytes());
    Ok(RunOutput {
        name: "mnist-encode",
        config: json!({ "index": a.index, "compressed": a.compressed, "decompose": a.decompose }),
        datasets: vec![source],
        metrics: json!({
            "label": sample.label,
            "qubits": circuit.qubits,
            "gates": circuit.ops.len(),
            "multi_controlled_gates": multi,
            "fidelity": fidelity,
            "max_abs_diff": simulated.max_abs_diff(&direct),
        }),
        outputs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Qnn1,
    Qnn2,
    Qnn3,
    Nn1,
    Nn2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Loss {
    Hinge,
    Mse,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Gradient {
    Adjoint,
    Shift,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Packed dataset with exactly two digits; the smaller digit is the +1 class.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_enum)]
    config: Preset,
    #[arg(long, value_enum, default_value_t = Loss::Hinge)]
    loss: Loss,
    #[arg(long, default_value_t = 30)]
    epochs: usize,
    #[arg(long, default_value_t = 10)]
    folds: usize,
    /// Train on this many samples drawn by a seeded shuffle (all when absent).
    #[arg(long)]
    subset: Option<usize>,
    /// Validate on the next N shuffled samples instead of cross-validating.
    #[arg(long)]
    holdout: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    lr: f64,
    #[arg(long, default_value_t = 32)]
    batch_size: usize,
    /// QNN gradient method; both give the same values.
    #[arg(long, value_enum, default_value_t = Gradient::Adjoint)]
    gradient: Gradient,
    /// Learning curves: fold, epoch, train_loss, val_accuracy.
    #[arg(long, default_value = "history.csv")]
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct CurveRow {
    fold: usize,
    epoch: usize,
    train_loss: f64,
    val_accuracy: f64,
}

fn train(a: TrainArgs, ctx: &Context) -> Result<RunOutput> {
    let (data, source) = load_dataset(&a.data)?;
    let classes: Vec<u8> = data.samples.iter().map(|s| s.label).collect::<BTreeSet<_>>().into_iter().collect();
    if classes.len() != 2 {
        return Err(CliError::InvalidConfig(format!("training needs exactly two digits, dataset has {classes:?}")));
    }
    let signed = |label: u8| if label == classes[0] { 1.0 } else { -1.0 };

    let mut order: Vec<usize> = (0..data.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(ctx.seed));
    let take = a.subset.unwrap_or(data.len());
    let need = take + a.holdout.unwrap_or(0);
    if take == 0 || need > data.len() {
        return Err(CliError::InvalidConfig(format!("subset/holdout need {need} samples, dataset has {}", data.len())));
    }
    let (train_idx, val_idx) = order[..need].split_at(take);

    let loss = match a.loss {
        Loss::Hinge => LossKind::Hinge,
        Loss::Mse => LossKind::Mse,
    };
    let opt = OptConfig {
        learning_rate: a.lr,
        epochs: a.epochs,
        batch_size: a.batch_size,
        folds: a.folds,
        gradient: match a.gradient {
            Gradient::Adjoint => GradientMethod::Adjoint,
            Gradient::Shift => GradientMethod::ParameterShift,
        },
    };
    let holdout = a.holdout.is_some();
    let (histories, model_json, params) = match a.config {
        Preset::Nn1 | Preset::Nn2 => {
            let base = if a.config == Preset::Nn1 { MlpBaseline::nn1() } else { MlpBaseline::nn2() };
            let model = MlpBaseline { loss, seed: ctx.seed, ..base };
            if model.input_dim != data.side * data.side {
                return Err(CliError::InvalidConfig(format!(
                    "{:?} takes {} inputs, dataset images have {}",
                    a.config,
                    model.input_dim,
                    data.side * data.side
                )));
            }
            let samples = |idx: &[usize]| -> Vec<Sample<Vec<f64>>> {
                idx.iter()
                    .map(|&i| {
                        let s = &data.samples[i];
                        Sample { input: s.image.signed_features(), label: signed(s.label) }
                    })
                    .collect()
            };
            let h = fit(&model, samples(train_idx), samples(val_idx), &opt, holdout)?;
            (h, serde_json::to_value(&model)?, model.param_count())
        }
        Preset::Qnn1 | Preset::Qnn2 | Preset::Qnn3 => {
            let base = match a.config {
                Preset::Qnn1 => QnnConfig::qnn1(),
                Preset::Qnn2 => QnnConfig::qnn2(),
                _ => QnnConfig::qnn3(),
            };
            let model = QnnConfig { loss, seed: ctx.seed, ..base };
            if model.image_side != data.side {
                return Err(CliError::InvalidConfig(format!(
                    "{:?} takes {side}x{side} images, dataset has {got}x{got}",
                    a.config,
                    side = model.image_side,
                    got = data.side
                )));
            }
            let samples = |idx: &[usize]| -> Result<Vec<Sample<_>>> {
                idx.iter()
                    .map(|&i| {
                        let s = &data.samples[i];
                        Ok(Sample { input: model.encode(&s.image)?, label: signed(s.label) })
                    })
                    .collect()
            };
            let h = fit(&model, samples(train_idx)?, samples(val_idx)?, &opt, holdout)?;
            (h, serde_json::to_value(&model)?, model.param_count())
        }
    };

    let mut csv_out = csv::Writer::from_writer(Vec::new());
    for h in &histories {
        for (e, (loss, acc)) in h.train_loss.iter().zip(&h.val_accuracy).enumerate() {
            let row = CurveRow { fold: h.fold, epoch: e + 1, train_loss: *loss, val_accuracy: *acc };
            csv_out.serialize(row).map_err(|e| CliError::Other(e.to_string()))?;
        }
    }
    let csv_bytes = csv_out.into_inner().map_err(|e| CliError::Other(e.to_string()))?;

    let finals: Vec<f64> = histories.iter().map(TrainHistory::final_val_accuracy).collect();
    let bests: Vec<f64> = histories.iter().map(TrainHistory::best_val_accuracy).collect();
    let mut outputs = Outputs::default();
    outputs.add(ctx.resolve(&a.out), csv_bytes);
    Ok(RunOutput {
        name: "mnist-train",
        config: json!({
            "preset": format!("{:?}", a.config).to_lowercase(),
            "model": model_json,
            "params": params,
            "opt": opt,
            "positive_digit": classes[0],
            "train_samples": train_idx.len(),
            "holdout_samples": a.holdout,
        }),
        datasets: vec![source],
        metrics: json!({
            "final_val_accuracy": finals,
            "best_val_accuracy": bests,
            "mean_final_val_accuracy": mean(&finals),
            "mean_best_val_accuracy": mean(&bests),
        }),
        outputs,
    })
}

fn fit<M: Model>(
    model: &M,
    train: Vec<Sample<M::Input>>,
    val: Vec<Sample<M::Input>>,
    opt: &OptConfig,
    holdout: bool,
) -> Result<Vec<TrainHistory>>
where
    M::Input: Clone + Send,
{
    Ok(if holdout { vec![train_holdout(model, &train, &val, opt, 0)?] } else { cross_validate(model, &train, opt)? })
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len().max(1) as f64
}

fn load_dataset(path: &Path) -> Result<(BinaryDataset, DatasetDigest)> {
    let bytes = read_input(path)?;
    Ok((BinaryDataset::from_bytes(&bytes)?, digest(path, &bytes)))
}

