//! `mespin`: runs the magneto-electric memory experiments and writes their
//! CSV datasets.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod experiments;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use config::ExperimentConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// One magnetization trajectory under a write pulse.
    Trajectory,
    /// Switching probability versus voltage for several ME coefficients.
    Switchprob,
    /// Device and bit-cell TMR versus MgO thickness and access W/L.
    TmrSweep,
    /// Dual-port array write/read scenario.
    DualportDemo,
    /// CAM store/search scenario.
    CamDemo,
    /// Both array scenarios plus per-bit write and read energy checks.
    MemoryReport,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Trajectory => "trajectory",
            Experiment::Switchprob => "switchprob",
            Experiment::TmrSweep => "tmr-sweep",
            Experiment::DualportDemo => "dualport-demo",
            Experiment::CamDemo => "cam-demo",
            Experiment::MemoryReport => "memory-report",
        }
    }
}

#[derive(Debug, Parser)]
#[command(version, about)]
struct Cli {
    experiment: Experiment,
    /// JSON overrides of the built-in defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Seed; falls back to the config, then MESPIN_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo trials per sweep point.
    #[arg(long)]
    trials: Option<u64>,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    workers: Option<usize>,
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig, String> {
    let (mut cfg, seed_in_config) = match &cli.config {
        Some(path) => {
            let cfg = ExperimentConfig::load(path)?;
            let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
            let has_seed = serde_json::from_str::<serde_json::Value>(&text)
                .map(|v| v.get("seed").is_some())
                .unwrap_or(false);
            (cfg, has_seed)
        }
        None => (ExperimentConfig::defaults(), false),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    } else if !seed_in_config {
        if let Ok(s) = std::env::var("MESPIN_SEED") {
            cfg.seed = s
                .trim()
                .parse()
                .map_err(|_| format!("MESPIN_SEED: not a u64: {s:?}"))?;
        }
    }
    if let Some(n) = cli.trials {
        cfg.n_trials = n;
    }
    cfg.validate(cli.experiment)?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool, String> {
    let cfg = resolve(cli)?;
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err("--workers must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let out = match cli.experiment {
        Experiment::Trajectory => experiments::trajectory(&cfg),
        Experiment::Switchprob => experiments::switchprob(&cfg),
        Experiment::TmrSweep => experiments::tmr(&cfg),
        Experiment::DualportDemo => experiments::dualport(&cfg),
        Experiment::CamDemo => experiments::cam(&cfg),
        Experiment::MemoryReport => experiments::memory_report(&cfg),
    }?;
    std::fs::create_dir_all(&cli.out).map_err(|e| format!("{}: {e}", cli.out.display()))?;
    for (name, body) in &out.files {
        let path = cli.out.join(name);
        std::fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
        println!("wrote {}", path.display());
    }
    println!("experiment={} seed={}", cli.experiment.name(), cfg.seed);
    for line in &out.summary {
        println!("{line}");
    }
    for check in &out.checks {
        println!("{check}");
    }
    Ok(out.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
