use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qwalk_cli::config::{CoinSpec, ExperimentConfig, Mode, Overrides};
use qwalk_cli::{run, Failure};

/// Quantum walks with periodic position measurement.
///
/// Settings come from defaults, then the `--config` JSON file, then flags;
/// later sources win.
#[derive(Parser)]
#[command(name = "qwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherent walk from the mixed coin state; writes walk.csv and walk.json
    Walk(Flags),
    /// Walk with periodic measurement, d = round(t^beta); writes ppm.csv and ppm_stats.json
    Ppm(Flags),
    /// Compare the scaled distribution with its limit law; writes limit.json
    Limit(Flags),
    /// Momentum-space checks of sigma^2 and the block characteristic function; writes spectral.json
    Spectral(Flags),
    /// Distributions for beta = 0, 0.5, 1 at fixed t; writes figure2_*.csv and figure2_summary.json
    Figure2(Flags),
}

#[derive(Args)]
struct Flags {
    /// JSON experiment config
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Target total number of steps
    #[arg(long, value_name = "INT")]
    t: Option<u64>,
    /// Time-scale exponent in [0, 1]
    #[arg(long, value_name = "FLOAT")]
    beta: Option<f64>,
    /// hadamard | dirac:EPS | params:R,PHI,PSI,DELTA | entries:ARE,AIM,BRE,BIM,CRE,CIM,DRE,DIM
    #[arg(long, value_name = "SPEC")]
    coin: Option<CoinSpec>,
    /// Seed for Monte Carlo trajectories
    #[arg(long, value_name = "INT")]
    seed: Option<u64>,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// k-grid size for spectral quadratures
    #[arg(long = "quad-points", value_name = "INT")]
    quad_points: Option<usize>,
}

fn resolve(mode: Mode, flags: Flags) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(anyhow::anyhow!("reading {}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text).map_err(|e| Failure::Config(anyhow::anyhow!(e)))?
        }
        None => ExperimentConfig::default(),
    };
    cfg.apply(
        mode,
        &Overrides {
            t: flags.t,
            beta: flags.beta,
            coin: flags.coin,
            seed: flags.seed,
            out: flags.out,
            quad_points: flags.quad_points,
        },
    );
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, flags) = match cli.command {
        Command::Walk(f) => (Mode::Walk, f),
        Command::Ppm(f) => (Mode::Ppm, f),
        Command::Limit(f) => (Mode::Limit, f),
        Command::Spectral(f) => (Mode::Spectral, f),
        Command::Figure2(f) => (Mode::Figure2, f),
    };
    let result = resolve(mode, flags).and_then(|cfg| run(&cfg));
    match result {
        Ok(out) => {
            println!("{}", out.summary);
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qwalk {mode}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
