use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use qbench_credit::{
    one_hot_standardize, parse_german_data, select_features, train_logistic, ForestConfig, SelectionConfig,
    SelectionSolver, SplitConfig, TrainConfig,
};
use qbench_qubo::solvers::{ExtractionKind, ExtractionStrategy, HybridConfig, InnerSolver};
use serde_json::json;

use crate::error::{CliError, Result};
use crate::record::{digest, read_input, Outputs};
use crate::{Context, RunOutput};

#[derive(Debug, Subcommand)]
pub enum CreditCmd {
    /// Importance ranking, QUBO feature selection and a logistic model on the selection.
    Run(RunArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Solver {
    Exact,
    Sa,
    Hybrid,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Whitespace-separated credit records with categorical codes.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    /// Minimum importance for a feature to enter the QUBO.
    #[arg(long, default_value_t = 0.01)]
    threshold: f64,
    #[arg(long, default_value_t = 10.0)]
    big_m: f64,
    #[arg(long, default_value_t = 100)]
    trees: usize,
    #[arg(long, default_value_t = 8)]
    max_depth: usize,
    #[arg(long, value_enum, default_value_t = Solver::Sa)]
    solver: Solver,
    #[arg(long, default_value_t = 2000)]
    sweeps: u64,
    /// Hybrid solver only; must not exceed the candidate count.
    #[arg(long, default_value_t = 12)]
    subset_size: usize,
    /// Hybrid solver only.
    #[arg(long, default_value_t = 50)]
    iterations: usize,
    #[arg(long, default_value_t = 0.3)]
    test_fraction: f64,
    #[arg(long, default_value = "report.json")]
    out: PathBuf,
}

impl CreditCmd {
    pub fn run(self, ctx: &Context) -> Result<RunOutput> {
        match self {
            CreditCmd::Run(a) => run(a, ctx),
        }
    }
}

fn run(a: RunArgs, ctx: &Context) -> Result<RunOutput> {
    let bytes = read_input(&a.data)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Malformed(format!("{} is not UTF-8", a.data.display())))?;
    let matrix = one_hot_standardize(&parse_german_data(text)?)?;

    let forest = ForestConfig { trees: a.trees, max_depth: a.max_depth, seed: ctx.seed, max_features: None };
    let selection_cfg =
        SelectionConfig { alpha: a.alpha, beta: a.beta, big_m: a.big_m, importance_threshold: a.threshold };
    let solver = match a.solver {
        Solver::Exact => SelectionSolver::Exact,
        Solver::Sa => SelectionSolver::Anneal { sweeps: a.sweeps, seed: ctx.seed },
        Solver::Hybrid => SelectionSolver::Hybrid(HybridConfig {
            strategy: ExtractionStrategy::new(ExtractionKind::Random, a.subset_size),
            iterations: a.iterations,
            inner: InnerSolver::Exact,
            seed: ctx.seed,
            kick: None,
        }),
    };
    let split = SplitConfig { test_fraction: a.test_fraction, seed: ctx.seed };
    let train = TrainConfig::default();

    let selection = select_features(&matrix, &forest, &selection_cfg, &solver)?;
    let (model, report) = train_logistic(&matrix.restrict(&selection.columns), &split, &train)?;

    let config = json!({
        "data": a.data.display().to_string(),
        "forest": forest,
        "selection": selection_cfg,
        "solver": solver,
        "split": split,
        "train": train,
    });
    let body = json!({
        "selected": selection.names,
        "candidates": selection.candidates,
        "objective": selection.objective,
        "model": model,
        "report": report,
        "config": config,
    });
    let mut outputs = Outputs::default();
    outputs.add_json(ctx.resolve(&a.out), &body)?;
    Ok(RunOutput {
        name: "credit-run",
        config,
        datasets: vec![digest(&a.data, &bytes)],
        metrics: json!({
            "selected": selection.names,
            "candidates": selection.candidates.len(),
            "accuracy": report.accuracy,
            "classes": report.classes,
        }),
        outputs,
    })
}
