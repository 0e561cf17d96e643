use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use swarmsim::harness::config::parse_counts;
use swarmsim::harness::{self, load_config, Pairing};
use swarmsim::{HarnessError, ModelParams, StrategyMode};

const EXIT_VALIDATION: u8 = 1;
const EXIT_IO: u8 = 2;

#[derive(Parser)]
#[command(name = "swarmsim", version, about = "Rugby match simulator with a drone observation swarm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one match and write events, summary, channel and fusion CSVs.
    Run {
        #[arg(long)]
        strategy: StrategyMode,
        #[arg(long)]
        drones: usize,
        #[arg(long, default_value_t = 1800)]
        ticks: u64,
        #[arg(long, default_value_t = 2025)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a parameter sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Override the configured repetition count.
        #[arg(long)]
        reps: Option<u32>,
        /// One repetition per point with the same match replayed everywhere.
        #[arg(long)]
        single_run: bool,
        /// Override the configured output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gap statistics between single- and multi-view curves from sweep.csv.
    Table1 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Observer-count breakdown at selected drone counts from sweep.csv.
    Table2 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "1,4,10,20")]
        counts: String,
    },
    /// Fuse per-drone detector outputs from a channels CSV.
    Fuse {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge versus cloud energy and bandwidth per swarm size.
    Scenario {
        #[arg(long, default_value = "1..40")]
        counts: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let io = e.chain().any(|c| {
        c.downcast_ref::<HarnessError>().is_some_and(HarnessError::is_io) || c.is::<std::io::Error>()
    });
    if io {
        EXIT_IO
    } else {
        EXIT_VALIDATION
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            // A closed pipe (e.g. `| head`) is not an error.
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).context("writing to stdout"),
            _ => Ok(()),
        },
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Run {
            strategy,
            drones,
            ticks,
            seed,
            out,
        } => {
            anyhow::ensure!(ticks >= 1, "--ticks must be at least 1");
            let params = ModelParams::default();
            let single = harness::run_single(&params, strategy, drones, ticks, seed);
            let paths = harness::sweep::write_single_run(&single, &params, seed, &out)?;
            let c = &single.summary.counts;
            println!(
                "{strategy} n={drones}: {} collisions, {} seen by >=1, {} seen by >=2",
                c.total,
                c.seen_ge1(),
                c.seen_ge2()
            );
            for p in paths {
                println!("wrote {}", p.display());
            }
        }
        Command::Sweep {
            config,
            reps,
            single_run,
            out,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(r) = reps {
                cfg.reps = r;
            }
            if single_run {
                cfg.reps = 1;
                cfg.common_random_numbers = true;
            }
            if let Some(o) = out {
                cfg.output_dir = o;
            }
            let result = harness::run_sweep(&cfg)?;
            println!(
                "{} runs over {} points written to {}",
                result.runs.len() + result.unpaired_runs.len(),
                result.records.len(),
                cfg.output_dir.display()
            );
            if cfg.pairing == Pairing::Unpaired {
                println!("unpaired second run set in summary_unpaired.csv");
            }
        }
        Command::Table1 { input } => {
            let rows = harness::read_sweep(&input)?;
            emit(&harness::table1(&rows)?, None)?;
        }
        Command::Table2 { input, counts } => {
            let counts = parse_counts(&counts).context("invalid --counts")?;
            let rows = harness::read_sweep(&input)?;
            emit(&harness::table2(&rows, &counts)?, None)?;
        }
        Command::Fuse { input, threshold, out } => {
            anyhow::ensure!(
                (0.0..=1.0).contains(&threshold),
                "--threshold must lie in [0, 1]"
            );
            let text = harness::fuse_file(&input, threshold)?;
            emit(&text, out.as_deref())?;
        }
        Command::Scenario { counts } => {
            let counts = parse_counts(&counts).context("invalid --counts")?;
            emit(&harness::scenario_table(&counts, &ModelParams::default()), None)?;
        }
    }
    Ok(())
}
