use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sle_cli::{run, CliError, Command, ExperimentConfig, OUTPUT_DIR_ENV};

/// Chordal SLE experiments: traces, expected signatures, left passage,
/// annulus crossings and dimension estimates.
#[derive(Debug, Parser)]
#[command(name = "sle", version)]
struct Args {
    /// trace, akappa-table, signature-mc, left-passage, crossings or dimension.
    /// May be omitted when the config file names one.
    command: Option<String>,

    /// JSON experiment configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n_paths: Option<u64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    n_steps: Option<usize>,
    #[arg(long)]
    closure_delta: Option<f64>,
    /// Output file; defaults to a name derived from the config inside the
    /// directory given by the environment variable, or the working directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads, 0 for one per core. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn build_config(args: &Args) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig::default(),
    };
    match (&args.command, &args.config) {
        (Some(c), _) => cfg.command = c.parse::<Command>()?,
        (None, Some(_)) => {}
        (None, None) => return Err(CliError::Config("no command given".into())),
    }
    if let Some(v) = args.kappa {
        cfg.kappa = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.n_paths {
        cfg.n_paths = v;
    }
    if let Some(v) = args.dt {
        cfg.dt = v;
    }
    if let Some(v) = args.n_steps {
        cfg.n_steps = v;
    }
    if let Some(v) = args.closure_delta {
        cfg.closure_delta = v;
    }
    if let Some(v) = &args.out {
        cfg.output_path = Some(v.clone());
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let result = build_config(&args).and_then(|cfg| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
        let dir = std::env::var(OUTPUT_DIR_ENV).ok();
        run(&cfg, dir.as_deref())
    });
    match result {
        Ok(summary) => {
            println!("{} -> {}", summary.line, summary.output.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("sle: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
