mod args;
mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> anyhow::Result<()> {
    let argv = config::expand_argv(std::env::args_os().collect())?;
    let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    let resolved = serde_json::to_value(&cli.command)?;
    match &cli.command {
        Command::Race(a) => commands::race(a, &resolved),
        Command::Zeros(a) => commands::zeros(a, &resolved),
        Command::Dist(a) => commands::dist(a, &resolved),
        Command::Compare(a) => commands::compare(a, &resolved),
        Command::Density(a) => commands::density(a, &resolved),
    }
}
