use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Build, verify and analyze finite-level Euler systems for G_m over Q.
#[derive(Parser, Debug)]
#[command(name = "eulerlab", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Working precision for interval computations.
    #[arg(long, global = true, env = "EULERLAB_PRECISION_BITS", default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(64..=4096))]
    pub precision_bits: u32,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (reports do not depend on this).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Cyclotomic,
    Coleman,
    Trivial,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// System file.
    pub file: Option<PathBuf>,

    #[arg(short, long = "input", conflicts_with = "file")]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a system and write it as JSON.
    Make {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        level: u64,
        /// Odd primes for a Coleman system, comma separated; omit for all odd primes.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Check the distribution relations of a system file.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Check every nested pair instead of covering pairs.
        #[arg(long)]
        all_pairs: bool,
        /// Also check (Q, E') pairs with prime-power conductor.
        #[arg(long)]
        include_rational_prime_power: bool,
    },
    /// Check the strictness congruences of a system file.
    Strict {
        #[command(flatten)]
        input: Input,
        /// Use every pair whose conductor grows by one new prime.
        #[arg(long)]
        literal: bool,
    },
    /// Print e_L and the characters it kills.
    Idempotent {
        #[arg(long)]
        field: String,
    },
    /// Compute the annihilator of c_L^{1+tau} and certify it.
    Annihilator {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Decide whether a value lies in the span of the orbit of c_L^{1+tau}.
    Membership {
        #[arg(long)]
        field: String,
        /// A rational like "2" or "3/4", or a cyclotomic number in JSON.
        #[arg(long)]
        value: String,
    },
    /// Split a system into a Coleman pattern times a multiple of c.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Enumerate the root-of-unity valued systems at a small level.
    Torsion {
        #[arg(long)]
        level: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match cli.global.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| commands::run(&cli)) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
