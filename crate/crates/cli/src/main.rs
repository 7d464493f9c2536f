//! Command-line front end: center verification, engine self-tests, the
//! representation census and the lemma suite.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CliError;
use config::{FileConfig, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "sl2hecke",
    version,
    about = "Computations in infinitesimal Hecke algebras of sl2 in odd characteristic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// TOML file with any of the keys below; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Odd prime (default 3).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Coefficients of z in D = h^2 + 4ef - 2h, e.g. "0,1" for z = D.
    #[arg(long, global = true, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for census artifacts (default "out").
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Largest power of t_z in the lift ansatz.
    #[arg(long, global = true)]
    ansatz_t: Option<u32>,
    /// Largest power of e in the lift ansatz.
    #[arg(long, global = true)]
    ansatz_e: Option<u32>,
    /// Largest degree of the Frobenius-part factor in the lift ansatz.
    #[arg(long, global = true)]
    ansatz_r: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and check the six central generators and the relation for t_z.
    VerifyCenter,
    /// Confluence, associativity, normal-form and bracket-formula checks.
    Selftest,
    /// Azumaya versus smooth loci over sampled central characters.
    Census {
        /// Skip the F_p grid of characters.
        #[arg(long)]
        no_grid: bool,
    },
    /// The commutator, polynomial and singular-locus lemmas.
    Lemmas,
    /// Print the PBW normal form of an expression.
    Print {
        expr: String,
        /// PBW order, e.g. "fyhex".
        #[arg(long)]
        order: Option<String>,
    },
}

fn run(cli: Cli) -> Result<report::Report, CliError> {
    let c = cli.common;
    let mut flags = FileConfig {
        p: c.p,
        z: c.z,
        seed: c.seed,
        out: c.out,
        samples: c.samples,
        ansatz_t: c.ansatz_t,
        ansatz_e: c.ansatz_e,
        ansatz_r: c.ansatz_r,
        grid: None,
    };
    if let Command::Census { no_grid: true } = cli.command {
        flags.grid = Some(false);
    }
    let file = match &c.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let cfg = RunConfig::resolve(flags.or(file))?;
    match &cli.command {
        Command::VerifyCenter => commands::verify_center(&cfg),
        Command::Selftest => commands::selftest(&cfg),
        Command::Census { .. } => commands::census(&cfg),
        Command::Lemmas => commands::lemmas(&cfg),
        Command::Print { expr, order } => commands::print(&cfg, expr, order.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
