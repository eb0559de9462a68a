use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use floatswe::config::{parse_config, Mode, RunConfig};
use floatswe::run::{audit_files, run};
use floatswe::{Error, Result};

/// Axisymmetric shallow water around a heaving floating cylinder.
#[derive(Parser)]
#[command(name = "floatswe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the mode selected in the config.
    Run { config: PathBuf },
    /// Check compatibility of the configured initial data.
    CheckCompat { config: PathBuf },
    /// Conservation audit of trajectory CSVs, coarse to fine.
    Audit {
        #[arg(required = true)]
        trajectories: Vec<PathBuf>,
    },
}

fn load(path: &Path) -> Result<RunConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(parse_config(&text)?.with_base_dir(base))
}

fn threads() -> Result<()> {
    let Ok(v) = std::env::var("FLOATSWE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::config(
            "FLOATSWE_THREADS",
            format!("expected a positive integer, got `{v}`"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::config("FLOATSWE_THREADS", e.to_string()))
}

fn execute(cli: Cli) -> Result<serde_json::Value> {
    threads()?;
    match cli.command {
        Command::Run { config } => run(&load(&config)?),
        Command::CheckCompat { config } => {
            let mut cfg = load(&config)?;
            cfg.mode = Mode::CheckCompat;
            run(&cfg)
        }
        Command::Audit { trajectories } => audit_files(&trajectories),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(summary) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("summary serializes")
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
