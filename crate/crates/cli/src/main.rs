//! `qbench`: seeded runs of the QUBO, credit and image-classifier pipelines.
//!
//! Every successful run writes its artifacts plus one `<command>.run.json`
//! record into `--out-dir`. Nothing is written when a run fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

mod commands;
mod error;
mod record;

use commands::{credit::CreditCmd, mnist::MnistCmd, qubo::QuboCmd};
use error::{CliError, Result};
use record::{DatasetDigest, Outputs, RunRecord};

#[derive(Debug, Parser)]
#[command(name = "qbench", version, about = "Seeded QUBO, feature-selection and QNN experiments")]
struct Cli {
    /// Seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Directory for artifacts and the run record; relative `--out` paths resolve here.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// QUBO model solving.
    #[command(subcommand)]
    Qubo(QuboCmd),
    /// Credit-scoring feature selection.
    #[command(subcommand)]
    Credit(CreditCmd),
    /// MNIST preprocessing, encoding and training.
    #[command(subcommand)]
    Mnist(MnistCmd),
}

pub struct Context {
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl Context {
    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.out_dir.join(path)
        }
    }
}

/// What a subcommand hands back for recording.
pub struct RunOutput {
    pub name: &'static str,
    pub config: serde_json::Value,
    pub datasets: Vec<DatasetDigest>,
    pub metrics: serde_json::Value,
    pub outputs: Outputs,
}

fn run(cli: Cli, argv: Vec<String>) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::InvalidConfig("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Other(e.to_string()))?;
    }
    let ctx = Context { seed: cli.seed, out_dir: cli.out_dir };
    let start = Instant::now();
    let out = match cli.command {
        Command::Qubo(c) => c.run(&ctx)?,
        Command::Credit(c) => c.run(&ctx)?,
        Command::Mnist(c) => c.run(&ctx)?,
    };
    let RunOutput { name, config, datasets, metrics, mut outputs } = out;
    let record = RunRecord {
        command: argv,
        config,
        seed: ctx.seed,
        datasets,
        metrics,
        duration_secs: start.elapsed().as_secs_f64(),
        artifacts: outputs.paths(),
    };
    outputs.add_json(ctx.out_dir.join(format!("{name}.run.json")), &record)?;
    outputs.commit()
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::try_parse_from(&argv).unwrap_or_else(|e| e.exit());
    match run(cli, argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
