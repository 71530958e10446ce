use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tlam_cli::compare::{compare_csv, Norm};
use tlam_cli::error::{CliError, CliResult};
use tlam_cli::figures::reproduce_figure;
use tlam_cli::run::run;
use tlam_cli::scenario::{Kind, Scenario};

#[derive(Parser)]
#[command(name = "tlam", version, about = "Waves in temporal laminates and chiral rods, driven by scenario files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its outputs plus manifest.json.
    Run {
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check a scenario without running it.
    Validate { config: PathBuf },
    /// Error norms between two CSV outputs on the same grid.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "linf")]
        norm: Norm,
    },
    /// Scenario kinds and the artifacts each can write.
    ListScenarios,
    /// Regenerate the data of a figure.
    ReproduceFigure {
        figure: u32,
        #[arg(long, default_value = "figures")]
        out: PathBuf,
    },
}

fn load(path: &Path) -> CliResult<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Scenario::from_json(&text)
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run { config, out } => {
            let manifest = run(&load(&config)?, &out)?;
            for a in &manifest.artifacts {
                println!("{}  {}", a.sha256, out.join(&a.path).display());
            }
            println!("wall time {:.3} s", manifest.wall_time_seconds);
        }
        Command::Validate { config } => {
            let s = load(&config)?;
            println!("valid {} scenario", s.kind.name());
            for (k, v) in s.preview() {
                println!("{k} = {v}");
            }
        }
        Command::Compare { a, b, norm } => print!("{}", compare_csv(&a, &b, norm)?),
        Command::ListScenarios => {
            for kind in Kind::ALL {
                let artifacts: Vec<String> = kind
                    .artifacts()
                    .iter()
                    .map(|(name, f)| format!("{name}.{}", f.extension()))
                    .collect();
                println!("{:<22} {}", kind.name(), kind.summary());
                println!("{:<22} writes {}", "", artifacts.join(", "));
            }
        }
        Command::ReproduceFigure { figure, out } => {
            let dir = out.join(format!("fig{figure}"));
            for (name, manifest) in reproduce_figure(figure, &dir)? {
                println!("{name}: {} artifact(s) in {}", manifest.artifacts.len(), dir.join(name).display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Validation(errors) = &e {
                for err in errors {
                    eprintln!("  {err}");
                }
            }
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
