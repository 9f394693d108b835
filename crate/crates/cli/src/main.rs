//! `triplebent`: build permutation triples, check property (A_n), and
//! certify the bentness of the synthesized Boolean functions.
//!
//! Exit codes: 0 success, 1 usage or IO error, 2 violated family
//! condition, 3 resource limit.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Failure;

#[derive(Debug, Parser)]
#[command(name = "triplebent", version, about = "Bent functions from permutation triples over GF(2^n)")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Field as gf2:<n>[:<modulus hex>]; defaults to the smallest
    /// irreducible modulus of the required degree.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Wrap output in a JSON run report with inputs and timings.
    #[arg(long, global = true)]
    pub json: bool,
    /// Re-run checks with the brute-force reference implementations and
    /// fail on any disagreement.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Seed for randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a triple from one of the five families.
    Construct(commands::ConstructArgs),
    /// Check property (A_n) and the agreement sets of a triple.
    Verify(commands::VerifyArgs),
    /// Synthesize the Boolean function of a triple.
    Synth(commands::SynthArgs),
    /// Walsh spectrum summary (or full CSV) of a function or triple.
    Walsh(commands::WalshArgs),
    /// List every valid parameter tuple of a family.
    Params(commands::ParamsArgs),
    /// Search for custom triples with property (A_n).
    Search(commands::SearchArgs),
}

fn run(cli: Cli) -> Result<String, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Construct(a) => commands::construct(g, a),
        Command::Verify(a) => commands::verify(g, a),
        Command::Synth(a) => commands::synth(g, a),
        Command::Walsh(a) => commands::walsh(g, a),
        Command::Params(a) => commands::params(g, a),
        Command::Search(a) => commands::search(g, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { report::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(report::EXIT_USAGE);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
