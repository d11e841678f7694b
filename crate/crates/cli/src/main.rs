//! `reflexive`: command-line driver for the rank-2 reflexive sheaf calculator.
//!
//! Exit codes: 0 success, 1 invalid input, 2 inconsistent mathematical data,
//! 3 internal identity failure.

mod args;
mod commands;
mod scan;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reflexive::Error;

use args::{SheafArgs, ThreefoldArgs};
use commands::{BoundArgs, ExtArgs, ModuliArgs, SelftestArgs};
use scan::ScanArgs;

#[derive(Debug, Parser)]
#[command(name = "reflexive", version, about = "Exact numerics for rank-2 reflexive sheaves on threefolds")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Threefold invariants and, with a sheaf, its twist/dual/Serre data.
    Info(InfoArgs),
    /// Euler characteristics of F and F*.
    Chi(SheafArgs),
    /// Sweep a grid of (r, k, d, pa) and emit CSV.
    Scan(ScanArgs),
    /// Saturate the vanishing rules and print the derived facts.
    Vanish(SheafArgs),
    /// Check the smoothness theorems for the moduli space.
    Moduli(ModuliArgs),
    /// Evaluate the c3 bounds and twist thresholds.
    Bound(BoundArgs),
    /// Dimension constraints from the local-to-global Ext sequence.
    Ext(ExtArgs),
    /// Run every identity sweep and property suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, clap::Args)]
struct InfoArgs {
    #[command(flatten)]
    threefold: ThreefoldArgs,

    /// Sheaf data; same meaning as in `chi`.
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    det: Option<i64>,
    #[arg(long, value_name = "S", value_parser = args::parse_q, allow_hyphen_values = true, requires_all = ["det", "c3"], conflicts_with = "curve")]
    c2: Option<reflexive::Q>,
    #[arg(long, value_name = "C3", value_parser = args::parse_q, allow_hyphen_values = true, requires = "c2")]
    c3: Option<reflexive::Q>,
    #[arg(long, value_name = "D,PA", value_parser = args::parse_curve, allow_hyphen_values = true, requires = "det")]
    curve: Option<(reflexive::Q, i64)>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::Precondition(_) => 1,
        Error::NoSuchSheaf { .. } | Error::Inconsistent(_) | Error::Contradiction { .. } => 2,
        Error::Identity(_) => 3,
    }
}

fn run(cli: Cli) -> reflexive::Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Info(a) => {
            let sheaf = match a.det {
                None => None,
                Some(det) => Some(SheafArgs {
                    threefold: a.threefold.clone(),
                    det,
                    c2: a.c2,
                    c3: a.c3,
                    curve: a.curve,
                    assume: vec![],
                    twists: None,
                }),
            };
            commands::info(&a.threefold, sheaf.as_ref(), json)
        }
        Command::Chi(a) => commands::chi(&a.build()?, json),
        Command::Scan(a) => commands::scan(&a, json),
        Command::Vanish(a) => commands::vanish(&a.build()?, json),
        Command::Moduli(a) => commands::moduli(&a, json),
        Command::Bound(a) => commands::bound(&a, json),
        Command::Ext(a) => commands::ext(&a, json),
        Command::Selftest(a) => commands::selftest(&a, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
