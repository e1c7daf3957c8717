use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vms_core::harness::{find_preset, run_config_text, HarnessError, RunOutput, PRESETS};

/// Spectral VMS experiments for 1D advection-diffusion(-reaction) problems.
#[derive(Parser)]
#[command(name = "spectral-vms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named preset and write its CSV files.
    Preset {
        name: String,
        /// Output directory (default: out/<preset name>).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a configuration file and write its CSV files.
    Run {
        config: PathBuf,
        /// Output directory (default: out/<config name>).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the available presets.
    ListPresets,
}

fn report(output: &RunOutput, out: PathBuf) -> Result<(), HarnessError> {
    for path in output.write_to(&out)? {
        println!("wrote {}", path.display());
    }
    for case in &output.cases {
        let Some(slopes) = case.table("slopes.csv") else { continue };
        let (Some(ni), Some(si)) = (slopes.column_index("norm"), slopes.column_index("slope")) else {
            continue;
        };
        for row in &slopes.rows {
            let label = if case.config.case.is_empty() {
                String::new()
            } else {
                format!("[{}] ", case.config.case)
            };
            if let (Some(n), Some(s)) = (row[ni].as_text(), row[si].as_f64()) {
                println!("{label}slope {n}: {s:.4}");
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::ListPresets => {
            for p in PRESETS {
                println!("{:<20} {}", p.name, p.description);
            }
            Ok(())
        }
        Command::Preset { name, out } => {
            let preset = find_preset(&name).ok_or_else(|| HarnessError::UnknownPreset(name.clone()))?;
            let output = run_config_text(preset.config)?;
            report(&output, out.unwrap_or_else(|| PathBuf::from("out").join(&name)))
        }
        Command::Run { config, out } => {
            let text = std::fs::read_to_string(&config).map_err(|source| HarnessError::Io {
                path: config.clone(),
                source,
            })?;
            let output = run_config_text(&text)?;
            let default = PathBuf::from("out").join(&output.cases[0].config.name);
            report(&output, out.unwrap_or(default))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = std::error::Error::source(&err);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
