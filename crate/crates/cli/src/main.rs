//! `zfr`: batch experiments on Rankin–Selberg zero-free regions.

mod commands;
mod config;
mod output;
mod repspec;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Settings;

#[derive(Debug, Parser)]
#[command(name = "zfr", version, about = "Numerical laboratory for Rankin-Selberg zero-free regions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counting estimates of the sieve lemma on a (Y, t, C) grid.
    Sieve(Settings),
    /// Smoothed coefficient sum F(Y) against its residue prediction.
    Perron(Settings),
    /// Conductor inequality sweeps and global conductor bounds.
    Conductor(Settings),
    /// Rankin-Selberg factorization and pole order at s = 1.
    Poles(Settings),
    /// Width solver, lower-bound scan and the coefficient-sum chain.
    Zerofree(Settings),
    /// Truncated log L(s, pi x pi~) with tail bounds.
    Lfun(Settings),
    /// Ramanujan tau table as ap-table v1.
    GenDelta(Settings),
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Core(zfr_core::Error),
}

impl From<zfr_core::Error> for CliError {
    fn from(e: zfr_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use zfr_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Core(e) => match e {
                E::Argument(_) | E::Domain(_) => 2,
                E::Data(_) => 3,
                E::Resource { .. } => 4,
                E::Numeric(_) | E::Pole(_) => 5,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (name, settings) = match cli.command {
        Command::Sieve(s) => ("sieve", s),
        Command::Perron(s) => ("perron", s),
        Command::Conductor(s) => ("conductor", s),
        Command::Poles(s) => ("poles", s),
        Command::Zerofree(s) => ("zerofree", s),
        Command::Lfun(s) => ("lfun", s),
        Command::GenDelta(s) => ("gen-delta", s),
    };
    let settings = settings.resolve()?;
    let artifact = match name {
        "sieve" => commands::sieve(&settings)?,
        "perron" => commands::perron(&settings)?,
        "conductor" => commands::conductor(&settings)?,
        "poles" => commands::poles(&settings)?,
        "zerofree" => commands::zerofree(&settings)?,
        "lfun" => commands::lfun(&settings)?,
        _ => commands::gen_delta(&settings)?,
    };
    output::emit(name, &settings, &artifact)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zfr: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
