//! `vpal`: analyse, verify and search v-palindromic repeated concatenations.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vpal_core::oracle::{BruteForceMode, SearchProperty};
use vpal_core::Budget;

#[derive(Debug, Parser)]
#[command(name = "vpal", version, about = "Which repeated concatenations n(k) are v-palindromes")]
pub struct Cli {
    /// Output format.
    #[arg(long, short = 'f', value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,

    /// Pollard-rho iteration cap per factorization (at least 10000).
    #[arg(long, env = "VPAL_FACTOR_BUDGET", global = true, value_parser = parse_budget)]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Direct,
    Accelerated,
    Auto,
}

impl From<Mode> for BruteForceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Direct => BruteForceMode::Direct,
            Mode::Accelerated => BruteForceMode::Accelerated,
            Mode::Auto => BruteForceMode::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    /// omega0 neither 1 nor omega_f.
    #[value(name = "conj1")]
    OmegaF,
    /// omega0 neither 1 nor omega_b.
    Omegab,
    /// Some modulus does not divide the largest one.
    Anomaly,
}

impl From<Property> for SearchProperty {
    fn from(p: Property) -> Self {
        match p {
            Property::OmegaF => SearchProperty::OmegaFCounterexample,
            Property::Omegab => SearchProperty::OmegaBCounterexample,
            Property::Anomaly => SearchProperty::DivisibilityAnomaly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Paper,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Crucial primes, characteristic solutions and the indicator of n.
    Analyze {
        n: String,
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
    },
    /// Compare the indicator with brute force for k = 1..=kmax.
    Verify {
        n: String,
        #[arg(long)]
        kmax: u64,
        /// Exit with status 3 if any row is unverified.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// One line per n: indicator, c(n) and omega0.
    Table {
        #[arg(long, value_enum, conflicts_with = "numbers")]
        preset: Option<Preset>,
        numbers: Vec<String>,
    },
    /// Scan n = 2..=until for a property.
    Search {
        #[arg(value_enum)]
        property: Property,
        #[arg(long)]
        until: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        /// Stop after the first hit.
        #[arg(long)]
        first: bool,
    },
    /// Root-of-unity spectra of periodic functions.
    #[command(subcommand)]
    Spectrum(SpectrumCommand),
}

#[derive(Debug, Subcommand)]
pub enum SpectrumCommand {
    /// Spectrum and fundamental period of one period of samples.
    Periods {
        /// Comma-separated values f(0),...,f(w-1); complex values as 1+2i.
        #[arg(long)]
        samples: String,
    },
    /// Exact spectrum of the indicator of n.
    OfIndicator { n: String },
    /// Spectrum of I_a.
    Indicator { a: u64 },
}

fn parse_budget(s: &str) -> Result<u64, String> {
    let v: u64 = s.trim().parse().map_err(|_| format!("not an integer: {s:?}"))?;
    if v < Budget::MIN_ITERATIONS {
        return Err(format!("budget must be at least {}", Budget::MIN_ITERATIONS));
    }
    Ok(v)
}

/// Exit statuses.
pub mod status {
    pub const OK: u8 = 0;
    pub const DISAGREEMENT: u8 = 1;
    pub const INVALID_INPUT: u8 = 2;
    pub const UNVERIFIED: u8 = 3;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
