//! `cmc1`: CMC-1 surfaces, spectra, index reports, horizons, ends and monodromy.

mod commands;
mod config;
mod emit;
mod error;
#[cfg(test)]
mod tests;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Artifact, Target};
use config::Params;
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "cmc1", version, about = "CMC-1 surfaces in hyperbolic space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mesh a catalog surface: OBJ plus end-metadata sidecar
    Surface(Run),
    /// Numeric spectrum against the closed form, as CSV
    Spectrum(Run),
    /// Index report of a catalog surface
    Index(Run),
    /// Horizon and vision numbers of a Killing field
    Horizon(Run),
    /// Classification and asymptotics of an end
    Ends(Run),
    /// Monodromy of the frame around the origin
    Monodromy(Run),
}

#[derive(clap::Args, Debug)]
struct Run {
    /// JSON file with parameter values; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    params: Params,
}

/// Parse `argv` (program name first) and run; `Ok(None)` for help and version.
pub fn execute<I, T>(argv: I) -> Result<Option<Vec<Artifact>>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return Ok(None);
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            return Err(CliError::Usage(first.to_string()));
        }
    };
    run(cli).map(Some)
}

fn run(cli: Cli) -> Result<Vec<Artifact>, CliError> {
    let (name, run) = match &cli.command {
        Command::Surface(r) => ("surface", r),
        Command::Spectrum(r) => ("spectrum", r),
        Command::Index(r) => ("index", r),
        Command::Horizon(r) => ("horizon", r),
        Command::Ends(r) => ("ends", r),
        Command::Monodromy(r) => ("monodromy", r),
    };
    let base = match &run.config {
        Some(path) => Params::from_file(path)?,
        None => Params::default(),
    };
    let p = commands::resolve(name, base.overlay(&run.params))?;
    match name {
        "surface" => commands::surface(&p),
        "spectrum" => commands::spectrum(&p),
        "index" => commands::index(&p),
        "horizon" => commands::horizon(&p),
        "ends" => commands::ends(&p),
        _ => commands::monodromy_cmd(&p),
    }
}

fn write_all(artifacts: &[Artifact]) -> Result<(), CliError> {
    for a in artifacts {
        match &a.target {
            Target::Stdout => std::io::stdout().write_all(a.contents.as_bytes())?,
            Target::File(path) => {
                std::fs::write(path, &a.contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(std::env::args_os()).and_then(|a| write_all(&a.unwrap_or_default())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::from(if matches!(e, CliError::Usage(_)) { 2 } else { 1 })
        }
    }
}
