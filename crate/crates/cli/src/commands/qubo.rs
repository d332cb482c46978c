use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use qbench_qubo::format::parse_model;
use qbench_qubo::solvers::{
    brute_force_solve, hybrid_solve, simulated_anneal, AnnealSchedule, ExtractionKind, ExtractionStrategy,
    HybridConfig, InnerSolver,
};
use serde_json::json;

use crate::error::{CliError, Result};
use crate::record::{digest, read_input, Outputs};
use crate::{Context, RunOutput};

#[derive(Debug, Subcommand)]
pub enum QuboCmd {
    /// Solve a model file and write the best assignment as JSON.
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SolverKind {
    Brute,
    Sa,
    Hybrid,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Strategy {
    Random,
    Influence,
    Kopt,
}

impl From<Strategy> for ExtractionKind {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Random => ExtractionKind::Random,
            Strategy::Influence => ExtractionKind::Influence,
            Strategy::Kopt => ExtractionKind::KOpt,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Inner {
    Exact,
    Sa,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Model file (`n`, `lin`, `quad`, `offset` lines).
    #[arg(long)]
    model: PathBuf,
    #[arg(long, value_enum, default_value_t = SolverKind::Sa)]
    solver: SolverKind,
    #[arg(long, value_enum, default_value_t = Strategy::Random)]
    strategy: Strategy,
    #[arg(long, default_value_t = 12)]
    subset_size: usize,
    #[arg(long, default_value_t = 50)]
    iterations: usize,
    /// Sub-problem solver for the hybrid loop.
    #[arg(long, value_enum, default_value_t = Inner::Exact)]
    inner: Inner,
    /// Annealing sweeps (sa solver, or hybrid with `--inner sa`).
    #[arg(long, default_value_t = 1000)]
    sweeps: u64,
    #[arg(long, default_value = "result.json")]
    out: PathBuf,
}

impl QuboCmd {
    pub fn run(self, ctx: &Context) -> Result<RunOutput> {
        match self {
            QuboCmd::Solve(a) => solve(a, ctx),
        }
    }
}

fn solve(a: SolveArgs, ctx: &Context) -> Result<RunOutput> {
    let bytes = read_input(&a.model)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Malformed(format!("{} is not UTF-8", a.model.display())))?;
    let model = parse_model(text).map_err(|e| CliError::Malformed(format!("{}: {e}", a.model.display())))?;
    let (solution, config) = match a.solver {
        SolverKind::Brute => (brute_force_solve(&model)?, json!({ "solver": "brute" })),
        SolverKind::Sa => {
            let schedule = AnnealSchedule::scaled_to(&model, a.sweeps, ctx.seed);
            (simulated_anneal(&model, &schedule)?, json!({ "solver": "sa", "schedule": schedule }))
        }
        SolverKind::Hybrid => {
            let inner = match a.inner {
                Inner::Exact => InnerSolver::Exact,
                Inner::Sa => InnerSolver::Anneal(AnnealSchedule::scaled_to(&model, a.sweeps, ctx.seed)),
            };
            let cfg = HybridConfig {
                strategy: ExtractionStrategy::new(a.strategy.into(), a.subset_size),
                iterations: a.iterations,
                inner,
                seed: ctx.seed,
                kick: None,
            };
            (hybrid_solve(&model, &cfg)?, json!({ "solver": "hybrid", "hybrid": cfg }))
        }
    };
    let out_path = ctx.resolve(&a.out);
    let mut outputs = Outputs::default();
    outputs.add_json(out_path, &solution)?;
    Ok(RunOutput {
        name: "qubo-solve",
        config: json!({ "model": a.model.display().to_string(), "n": model.n(), "run": config }),
        datasets: vec![digest(&a.model, &bytes)],
        metrics: json!({
            "value": solution.value,
            "evaluations": solution.evaluations,
            "ones": solution.assignment.count_ones(),
        }),
        outputs,
    })
}
