use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hqreg::commands::{run, Command, PenaltyKind, RunConfig};

#[derive(Parser)]
#[command(
    name = "hqreg",
    version,
    about = "Bayesian Huberised regularised quantile regression"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Fit one chain to a CSV dataset (response in the last column).
    Fit(Flags),
    /// Replicated simulation study over the benchmark designs.
    Simulate(Flags),
    /// Hyperparameter sensitivity on the logistic-curve design.
    Sensitivity(Flags),
    /// Joint log-posterior surface over (log β, log ρ²).
    Contour(Flags),
    /// K-fold cross-validated prediction errors on a CSV dataset.
    Cv(Flags),
}

#[derive(Clone, Copy, ValueEnum)]
enum PenaltyArg {
    Lasso,
    En,
}

#[derive(Args)]
struct Flags {
    /// key = value file; a previous run's manifest works here.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input CSV.
    input: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long, value_enum)]
    penalty: Option<PenaltyArg>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    burnin: Option<usize>,
    #[arg(long)]
    thin: Option<usize>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    folds: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    no_standardise: bool,
    /// Extra `key=value` settings, applied after the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn build_config(command: Command, f: Flags) -> hqreg::Result<RunConfig> {
    let mut cfg = match &f.config {
        Some(path) => RunConfig::from_file(command, path)?,
        None => RunConfig::new(command),
    };
    for kv in &f.set {
        let Some((k, v)) = kv.split_once('=') else {
            return Err(hqreg::Error::Config(format!(
                "--set expects KEY=VALUE, got `{kv}`"
            )));
        };
        cfg.set(k.trim(), v.trim())?;
    }
    if let Some(p) = f.input {
        cfg.input = Some(p);
    }
    if let Some(v) = f.seed {
        cfg.seed = v;
    }
    if let Some(v) = f.tau {
        cfg.tau = v;
    }
    if let Some(p) = f.penalty {
        cfg.penalty = match p {
            PenaltyArg::Lasso => PenaltyKind::Lasso,
            PenaltyArg::En => PenaltyKind::ElasticNet,
        };
    }
    if let Some(v) = f.iters {
        cfg.iters = v;
    }
    if let Some(v) = f.burnin {
        cfg.burnin = v;
    }
    if let Some(v) = f.thin {
        cfg.thin = v;
    }
    if let Some(v) = f.reps {
        cfg.reps = v;
    }
    if let Some(v) = f.folds {
        cfg.folds = v;
    }
    if let Some(p) = f.out {
        cfg.out = p;
    }
    if f.no_standardise {
        cfg.standardise = false;
    }
    Ok(cfg)
}

fn threads_from_env() -> hqreg::Result<Option<usize>> {
    match std::env::var("HQREG_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(hqreg::Error::Config(format!(
                "HQREG_THREADS must be a positive integer, got `{v}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (command, flags) = match cli.command {
        Sub::Fit(f) => (Command::Fit, f),
        Sub::Simulate(f) => (Command::Simulate, f),
        Sub::Sensitivity(f) => (Command::Sensitivity, f),
        Sub::Contour(f) => (Command::Contour, f),
        Sub::Cv(f) => (Command::Cv, f),
    };
    let result = build_config(command, flags)
        .and_then(|cfg| threads_from_env().map(|t| (cfg, t)))
        .and_then(|(cfg, threads)| run(&cfg, threads));
    match result {
        Ok(out) => {
            for f in &out.files {
                log::info!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}: {}", e.class(), e);
            ExitCode::FAILURE
        }
    }
}
