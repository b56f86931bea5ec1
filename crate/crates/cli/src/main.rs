//! Command-line driver: `discovery discover` runs the full pipeline and
//! writes the JSON/text reports, `discovery bench` tabulates the
//! fast-versus-slow enumeration comparison as CSV.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand};

use discovery_core::discovery::{
    bench_fast_slow, load_config, render_text, run_discovery, write_bench_csv, write_report,
    RunConfig,
};
use discovery_core::virtual_lab::OmegaMode;

#[derive(Parser)]
#[command(name = "discovery", version, about = "Field-theory discovery from dipole far-field data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the discovery pipeline and write the report.
    Discover {
        /// Run configuration file (flat `key = value` lines).
        #[arg(long)]
        config: PathBuf,
        /// Override the deepest complexity level to march.
        #[arg(long, value_name = "N")]
        q_max: Option<u32>,
        /// Override the experiment sampling seed.
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Override the frequency mode.
        #[arg(long, value_name = "MODE", value_parser = parse_mode)]
        mode: Option<OmegaMode>,
        /// Override the singular-value acceptance threshold.
        #[arg(long, value_name = "X")]
        eps_sv: Option<f64>,
        /// Override the report path (text goes next to it as .txt).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also print per-level statistics.
        #[arg(long)]
        verbose: bool,
    },
    /// Compare weighted marching against unit-weight enumeration.
    Bench {
        /// Run configuration file (flat `key = value` lines).
        #[arg(long)]
        config: PathBuf,
        /// CSV output path.
        #[arg(long)]
        output: PathBuf,
    },
}

fn parse_mode(text: &str) -> Result<OmegaMode, String> {
    OmegaMode::parse(text)
        .ok_or_else(|| format!("expected 'varying-omega' or 'paper-fixed-omega', got '{text}'"))
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Discover { config, q_max, seed, mode, eps_sv, output, verbose } => {
            let mut run: RunConfig = load_config(&config)
                .with_context(|| format!("loading config {}", config.display()))?;
            if let Some(q_max) = q_max {
                run.q_max = q_max;
            }
            if let Some(seed) = seed {
                run.seed = seed;
            }
            if let Some(mode) = mode {
                run.mode = mode;
            }
            if let Some(eps_sv) = eps_sv {
                run.eps_sv = eps_sv;
            }
            if let Some(output) = output {
                run.output_path = output;
            }
            run.validate()?;

            let report = run_discovery(&run)?;
            print!("{}", render_text(&report));
            if verbose {
                eprintln!("per-level candidates (q, handled, validated, seconds):");
                for level in &report.candidates_examined {
                    eprintln!(
                        "  {:>2}  {:>4}  {:>4}  {:.6}",
                        level.q, level.count, level.validated, level.wall_seconds
                    );
                }
            }
            write_report(&report, &run.output_path)?;
            println!(
                "report written to {} (text: {})",
                run.output_path.display(),
                run.output_path.with_extension("txt").display()
            );
            Ok(())
        }
        Command::Bench { config, output } => {
            let run = load_config(&config)
                .with_context(|| format!("loading config {}", config.display()))?;
            let bench = bench_fast_slow(&run)?;
            write_bench_csv(&bench, &output)?;
            println!(
                "fast: {} candidates emitted / {} examined to q_max = {}",
                bench.fast_emitted, bench.fast_examined, run.q_max
            );
            println!(
                "slow: {} candidates emitted / {} examined to set size 12",
                bench.slow_emitted, bench.slow_examined
            );
            println!("enumeration-work ratio (slow/fast): {:.0}x", bench.examined_ratio());
            println!("table written to {}", output.display());
            Ok(())
        }
    }
}
