mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Four-dimensional harmonic-oscillator model of helium.
///
/// Lengths are in Bohr radii and energies in hartree unless `--units`
/// says otherwise. The published tables label r "in Angstrom", but their
/// energies are reproduced only when r is read in Bohr radii, so r is
/// reported as `r_bohr`.
#[derive(Debug, Parser)]
#[command(name = "helium-ho", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Locate the geometry and energy for one set of quantum numbers.
    Solve(SolveArgs),
    /// Solve every triple of a quantum-number range and emit CSV.
    Sweep(SweepArgs),
    /// Dump the three radius surfaces on a grid as CSV.
    Surfaces(SurfacesArgs),
    /// Check the solver against the tabulated golden values.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Triple {
    #[arg(long)]
    pub n1: f64,
    #[arg(long)]
    pub n2: f64,
    #[arg(long)]
    pub n3: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SearchArgs {
    /// Grid nodes per axis for every scan.
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Maximum number of scans.
    #[arg(long, default_value_t = 15)]
    pub max_iters: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    /// Bohr radii and hartree.
    Au,
    /// Angstrom and electronvolts (text output only; JSON and CSV keep the
    /// atomic-unit keys).
    EvAngstrom,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub n: Triple,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Units::Au)]
    pub units: Units,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Values taken by each quantum number, as start:stop:step.
    #[arg(long, default_value = "0.5:5:0.5")]
    pub range: String,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct SurfacesArgs {
    #[command(flatten)]
    pub n: Triple,
    /// Grid nodes per axis.
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Fixture file; the built-in set when omitted.
    #[arg(long)]
    pub fixtures: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Report::Text)]
    pub report: Report,
    #[command(flatten)]
    pub search: SearchArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(commands::EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_USAGE)
        }
    }
}
