use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use levywalk::harness::{
    parse_config, run_suite, simulate, write_summary, ExperimentConfig, Suite,
};

#[derive(Parser)]
#[command(
    name = "levywalk",
    version,
    about = "Monte-Carlo scaling limits of Levy walks"
)]
struct Cli {
    /// Experiment configuration (flat `key = value` document).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; outputs do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump rescaled ensembles and sample trajectories.
    Simulate {
        /// Also simulate the reference-scale proxy ensembles at `n_ref`.
        #[arg(long)]
        proxy: bool,
    },
    /// Run a verification suite (or `all`); exits 1 if any row fails.
    Verify {
        /// laplace, tails, critical, collapse, exponents, invariants or all.
        suite: String,
    },
    /// Aggregate the reports found under the output directory.
    Report,
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let path = cli
        .config
        .as_ref()
        .context("--config is required for this command")?;
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut config = parse_config(&text).with_context(|| format!("in {}", path.display()))?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.output_dir = out.clone();
    }
    Ok(config)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Simulate { proxy } => {
            let config = load_config(cli)?;
            let dir = simulate(&config, cli.threads, *proxy)?;
            println!("wrote {}", dir.display());
            Ok(true)
        }
        Command::Verify { suite } => {
            let config = load_config(cli)?;
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut all_pass = true;
            for s in suites {
                let report =
                    run_suite(&config, s, cli.threads).with_context(|| format!("suite {s}"))?;
                for row in &report.rows {
                    println!("{row}");
                }
                println!(
                    "{s}: {} -> {}",
                    if report.passed() { "PASS" } else { "FAIL" },
                    report.dir.display()
                );
                all_pass &= report.passed();
            }
            Ok(all_pass)
        }
        Command::Report => {
            let root = match (&cli.out, &cli.config) {
                (Some(out), _) => out.clone(),
                (None, Some(_)) => load_config(cli)?.output_dir,
                (None, None) => bail!("report needs --out or --config"),
            };
            let (path, rows) = write_summary(&root)?;
            let failed = rows.iter().filter(|(_, r)| !r.pass).count();
            for (run, row) in rows.iter().filter(|(_, r)| !r.pass) {
                println!("{run}: {row}");
            }
            println!("{} rows, {failed} failed -> {}", rows.len(), path.display());
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
