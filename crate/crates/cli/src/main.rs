use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod output;

use output::Failure;

/// Exact invariants of torus knots and links.
#[derive(Parser, Debug)]
#[command(name = "torus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial, cyclotomic multiplicities, determinant and colorings.
    Invariant {
        p: u64,
        q: u64,
        /// Largest prime in the colorability table.
        #[arg(long, default_value_t = 13)]
        max_ell: u64,
    },
    /// Root moments over one period, mean, variance and residues (knots only).
    Moments { p: u64, q: u64 },
    /// Count roots of unity in an arc over all pairs up to X.
    Scan {
        x: u64,
        /// `coprime` (torus knots) or `all` (every pair).
        family: String,
        /// Arc as `[a/b,c/d]`, or two endpoints `a/b c/d`. Defaults to `[0,1]`.
        #[arg(num_args = 0..=2)]
        arc: Vec<String>,
        /// Also report the frequency F_r(X) for this r.
        #[arg(long)]
        freq: Option<u64>,
        /// Write one row per pair to this CSV file.
        #[arg(long)]
        per_pair: Option<PathBuf>,
        /// Print the per-pair rows as CSV on stdout instead of JSON.
        #[arg(long)]
        csv: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Homology orders along the ℓ^n-fold covers and the Iwasawa invariants.
    Tower {
        p: u64,
        q: u64,
        /// Specialization vector for links, e.g. `1,2,1`. Defaults to all ones.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Option<Vec<i64>>,
        #[arg(long)]
        ell: u64,
        /// Deepest level n.
        #[arg(long, default_value_t = 5)]
        n: u32,
        /// Print the levels as CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Mahler measure by root finding and by quadrature.
    Mahler {
        p: Option<u64>,
        q: Option<u64>,
        /// Integer coefficients from the constant term up, e.g. `-1,2` for 2t - 1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["p", "q"])]
        poly: Option<Vec<i64>>,
        #[arg(long, default_value_t = 1 << 16)]
        grid: usize,
    },
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Invariant { p, q, max_ell } => commands::invariant(p, q, max_ell),
        Command::Moments { p, q } => commands::moments(p, q),
        Command::Scan {
            x,
            family,
            arc,
            freq,
            per_pair,
            csv,
            jobs,
        } => {
            let args = commands::ScanArgs {
                x,
                family,
                arc,
                freq,
                per_pair,
                csv,
            };
            match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Failure::usage(format!("cannot start {n} threads: {e}")))?
                    .install(|| commands::scan(args)),
                None => commands::scan(args),
            }
        }
        Command::Tower {
            p,
            q,
            z,
            ell,
            n,
            csv,
        } => commands::tower(p, q, z, ell, n, csv),
        Command::Mahler { p, q, poly, grid } => commands::mahler(p, q, poly, grid),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
