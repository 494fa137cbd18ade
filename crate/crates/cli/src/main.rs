//! Command-line front end: constructions, searches, scans and certificate
//! checks over finite fields.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{Format, VerifyPolicy};

#[derive(Parser, Debug)]
#[command(name = "s3quartic", version, about = "Plane quartics with S3 symmetry over finite fields")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format; overrides the configuration.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Evidence required by `construct`; overrides the configuration.
    #[arg(long, global = true, value_enum)]
    policy: Option<VerifyPolicy>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build members of the family through a named route.
    Construct(ConstructArgs),
    /// Search pairs of extremal invariants for the best member over a field.
    Search {
        #[arg(long)]
        field: Option<String>,
        /// Which pairs (j, j') are tried.
        #[arg(long, value_enum, default_value_t = Pairs::All)]
        pairs: Pairs,
    },
    /// Reproducible scans over ranges.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Recount a certificate read from a JSON file.
    Verify { file: PathBuf },
    /// Static tables.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Frobenius trace of the standard curve with a given invariant.
    Trace {
        #[arg(long)]
        field: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        /// Quadratic twist parameter.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
    },
    /// Count the points of the quartic with the four given coefficients.
    Count {
        #[arg(long)]
        field: Option<String>,
        #[arg(num_args = 4, allow_hyphen_values = true, required = true)]
        coeffs: Vec<String>,
    },
}

#[derive(clap::Args, Debug)]
struct ConstructArgs {
    /// Route name; `--list-routes` shows them.
    #[arg(long, required_unless_present = "list_routes")]
    route: Option<String>,
    #[arg(long)]
    list_routes: bool,
    #[arg(long)]
    field: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<String>,
    /// Integer trace parameter of the characteristic-7 routes.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Branch `i` of `M3 = ρ^i`.
    #[arg(long)]
    branch: Option<u8>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Pairs {
    All,
    Diagonal,
    Frobenius,
}

#[derive(Subcommand, Debug)]
enum ScanCommand {
    /// Primes in [pmin, pmax] without an optimal member.
    Primes {
        pmin: u64,
        pmax: u64,
        /// Allow ranges beyond 2000.
        #[arg(long)]
        long_run: bool,
    },
    /// Primes 4b^2 + 7 carrying an optimal and a minimal member.
    Twin { bound: u64 },
    /// Odd n with m_{3^n} divisible by 3 above the threshold.
    Mq3 { nmax: u64 },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Rational invariants with complex multiplication.
    Cm,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let f = commands::Failure::of(&e);
            eprintln!("{}", f.json());
            ExitCode::from(f.code)
        }
    }
}
