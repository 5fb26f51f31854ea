//! `iwatsuka`: spectra, hull diagnostics, Chern numbers and the bulk-interface check.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 when a numerical guard trips.
//! Errors go to standard error as one JSON object.

mod commands;
mod config;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use config::{Command, ConfigError, Overrides, RunConfig};
use output::Sink;

#[derive(Parser)]
#[command(name = "iwatsuka", version, about = "Lattice laboratory for Iwatsuka magnetic fields")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand)]
enum Sub {
    /// Harper spectra for every rational flux with denominator up to --qmax.
    Butterfly,
    /// Eigenvalues of the interface Hamiltonian on the square window.
    Spectrum,
    /// Pattern counts and non-isolation of the hull over windows 1..=--Mmax.
    Hull,
    /// Chern numbers of every open gap of the bulk fluxes.
    Chern,
    /// Interface conductance over the slab lengths in --lengths.
    Conductance,
    /// Bulk Chern difference against the interface winding number.
    VerifyBic,
}

impl Sub {
    fn command(&self) -> Command {
        match self {
            Sub::Butterfly => Command::Butterfly,
            Sub::Spectrum => Command::Spectrum,
            Sub::Hull => Command::Hull,
            Sub::Chern => Command::Chern,
            Sub::Conductance => Command::Conductance,
            Sub::VerifyBic => Command::VerifyBic,
        }
    }
}

const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

enum Failure {
    Config(ConfigError),
    Core(iwatsuka::Error),
    Io(std::io::Error),
}

impl From<iwatsuka::Error> for Failure {
    fn from(e: iwatsuka::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Variant name of a core error, e.g. `NoCommonGap`.
fn variant_name(e: &iwatsuka::Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn exit_code(e: &iwatsuka::Error) -> u8 {
    use iwatsuka::Error::*;
    match e {
        PrecisionExhausted { .. }
        | EmptyGap { .. }
        | NotInterfaceLocalized(_)
        | GapClosed { .. }
        | NotProjection(_)
        | NoCommonGap { .. }
        | Eigen(_) => EXIT_NUMERICAL,
        InvalidSlope(_)
        | InvalidPhase(_)
        | DegenerateField
        | IrrationalFlux(_)
        | IrrationalSlope
        | NonHermitianPerturbation(_)
        | EmptyInterior(_)
        | SlabExceedsWindow { .. }
        | InvalidArgument(_) => EXIT_VALIDATION,
    }
}

fn report(payload: serde_json::Value, code: u8) -> ExitCode {
    eprintln!("{payload}");
    ExitCode::from(code)
}

fn fail(f: Failure) -> ExitCode {
    match f {
        Failure::Config(e) => report(
            json!({ "error": "InvalidConfig", "field": e.field, "message": e.message, "exit_code": EXIT_VALIDATION }),
            EXIT_VALIDATION,
        ),
        Failure::Core(e) => {
            let code = exit_code(&e);
            report(json!({ "error": variant_name(&e), "message": e.to_string(), "exit_code": code }), code)
        }
        Failure::Io(e) => report(json!({ "error": "Io", "message": e.to_string(), "exit_code": 1 }), 1),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let command = cli.command.command();
    let config = RunConfig::resolve(&cli.overrides).map_err(Failure::Config)?;
    let sink = Sink::new(cli.overrides.out.as_deref())?;
    let start = Instant::now();
    let wall = || start.elapsed().as_secs_f64();
    match command {
        Command::Hull => {
            let out = commands::hull(&config)?;
            sink.csv(command, &config, wall(), &out.table)?;
            if !sink.is_stdout() {
                let mut doc = out.patterns;
                doc["meta"] = output::meta(command, &config, wall());
                sink.named_json("hull_patterns.json", &doc)?;
            }
        }
        Command::VerifyBic => {
            let report = commands::verify(&config)?;
            sink.json(command, &config, wall(), &report)?;
        }
        _ => {
            let table = match command {
                Command::Butterfly => commands::butterfly(&config)?,
                Command::Spectrum => commands::spectrum(&config)?,
                Command::Chern => commands::chern(&config)?,
                _ => commands::conductance(&config)?,
            };
            sink.csv(command, &config, wall(), &table)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION);
        }
        Err(e) => {
            let message = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            return report(
                json!({ "error": "InvalidArguments", "message": message, "exit_code": EXIT_VALIDATION }),
                EXIT_VALIDATION,
            );
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(f),
    }
}
