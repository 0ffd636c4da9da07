//! `motionfeas` — physics-grounded feasibility scoring for 3D human-motion
//! trajectories, plus the evaluation statistics around it.

mod batch_cmd;
mod eval_cmd;
mod score_cmd;
mod selfcheck_cmd;

use clap::{Parser, Subcommand};
use motionfeas_core::config::ScoreConfig;
use motionfeas_core::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_IO: u8 = 4;
pub const EXIT_CONFIG: u8 = 5;

#[derive(Parser)]
#[command(
    name = "motionfeas",
    about = "Score 3D human-motion trajectories along kinematic, contact and dynamic feasibility axes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// Threshold config file; falls back to $MOTIONFEAS_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one config key, e.g. --set contact.height_max=0.03 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<ScoreConfig, Error> {
        let path = self
            .config
            .clone()
            .or_else(|| std::env::var_os("MOTIONFEAS_CONFIG").map(PathBuf::from));
        let mut config = match path {
            Some(p) => ScoreConfig::load(&p)?,
            None => ScoreConfig::default(),
        };
        for entry in &self.set {
            let (key, value) = entry
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--set `{entry}`: expected KEY=VALUE")))?;
            config.set(key.trim(), value.trim())?;
        }
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Score one trajectory file and print its report.
    Score {
        /// Trajectory file (.json or .mft).
        file: PathBuf,
        /// Take the mesh from this file instead of the trajectory file.
        #[arg(long)]
        mesh: Option<PathBuf>,
        /// Emit one JSON object instead of the table.
        #[arg(long)]
        json: bool,
        /// Include per-frame diagnostics in JSON output.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Score every trajectory in a directory into a CSV.
    Batch {
        dir: PathBuf,
        /// Output CSV path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Add a normalized-reward column, grouped by prompt_id.
        #[arg(long)]
        group_by_prompt: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Agreement and rank correlation of metric scores against human votes.
    Eval {
        votes: PathBuf,
        scores: PathBuf,
        /// Restrict to one question (body_structure, balance, motion_naturalness).
        #[arg(long)]
        question: Option<String>,
        /// Bootstrap resamples for the correlation uncertainty.
        #[arg(long, default_value_t = 1000)]
        bootstrap: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also write the table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sequential Elo ratings over a votes file.
    Elo {
        votes: PathBuf,
        #[arg(long)]
        question: Option<String>,
        /// Shuffle votes deterministically before the sequential pass.
        #[arg(long)]
        shuffle_seed: Option<u64>,
    },
    /// Pairwise win-rate matrix over a votes file.
    Winmatrix {
        votes: PathBuf,
        #[arg(long)]
        question: Option<String>,
    },
    /// Run the built-in fixture suite and print one line per check.
    Selfcheck,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Validation(_)
        | Error::TooFewFrames { .. }
        | Error::MissingJointLimits(_)
        | Error::MissingFootGeometry
        | Error::EmptyMesh
        | Error::Domain { .. }
        | Error::Degenerate(_)
        | Error::MissingScore { .. } => EXIT_VALIDATION,
        Error::Parse { .. } | Error::Format(_) | Error::Csv(_) => EXIT_PARSE,
        Error::Io(_) => EXIT_IO,
        Error::Config(_) => EXIT_CONFIG,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Score {
            file,
            mesh,
            json,
            trace,
            config,
        } => config
            .resolve()
            .and_then(|c| score_cmd::run(&file, mesh.as_deref(), json, trace, &c)),
        Command::Batch {
            dir,
            out,
            workers,
            group_by_prompt,
            config,
        } => config
            .resolve()
            .and_then(|c| batch_cmd::run(&dir, out.as_deref(), workers, group_by_prompt, &c)),
        Command::Eval {
            votes,
            scores,
            question,
            bootstrap,
            seed,
            out,
        } => eval_cmd::run_eval(
            &votes,
            &scores,
            question.as_deref(),
            bootstrap,
            seed,
            out.as_deref(),
        ),
        Command::Elo {
            votes,
            question,
            shuffle_seed,
        } => eval_cmd::run_elo(&votes, question.as_deref(), shuffle_seed),
        Command::Winmatrix { votes, question } => {
            eval_cmd::run_winmatrix(&votes, question.as_deref())
        }
        Command::Selfcheck => return selfcheck_cmd::run(),
    };
    match outcome {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
