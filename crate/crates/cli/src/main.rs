//! `splice`: link invariants of graph links from `.splice` diagram files.
//!
//! Exit codes: 0 success, 1 validation or domain error, 2 indeterminate
//! result, 3 parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

/// Exact link invariants of graph links from splice diagrams.
#[derive(Parser, Debug)]
#[command(name = "splice", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a diagram.
    Validate { file: PathBuf },
    /// Compute invariants; all of them unless some are selected.
    Invariants(InvariantsArgs),
    /// Print the linking-number table, or one linking number.
    Linking {
        file: PathBuf,
        /// Linking number of the (virtual) components at two vertices.
        #[arg(long, num_args = 2, value_names = ["V", "W"])]
        pair: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Run the identity checks on a diagram file or on random diagrams.
    Check(CheckArgs),
    /// Emit the star-shaped Seifert diagram with the given edge weights.
    Example {
        /// Weights at the central node, e.g. `1,2,3`.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        alphas: Vec<i64>,
        /// How many of the edges end in arrowheads.
        #[arg(long, default_value_t = 1)]
        arrows: usize,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    file: PathBuf,
    /// Conway potential function.
    #[arg(long)]
    potential: bool,
    /// Multivariable Alexander polynomial, normalized up to units.
    #[arg(long)]
    alexander: bool,
    /// One-variable Conway polynomial.
    #[arg(long)]
    conway: bool,
    /// Whether the link is fibered.
    #[arg(long)]
    fibered: bool,
    /// Sign counts and, for fibered links, the Seifert determinant sign.
    #[arg(long)]
    signs: bool,
    /// Expand factored results into Laurent polynomials.
    #[arg(long)]
    expand: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    file: Option<PathBuf>,
    /// Number of random diagrams to generate and check.
    #[arg(long, value_name = "COUNT")]
    random: Option<usize>,
    #[arg(long, env = "SPLICE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    max_vertices: usize,
    #[arg(long, default_value_t = 5)]
    max_components: usize,
    #[arg(long, default_value_t = 7)]
    max_weight: i64,
    #[arg(long, default_value_t = 0.1)]
    zero_prob: f64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Invariants(args) => commands::invariants(&args),
        Command::Linking { file, pair, json } => commands::linking(&file, pair.as_deref(), json),
        Command::Check(args) => commands::check(&args),
        Command::Example {
            alphas,
            arrows,
            out,
        } => commands::example(&alphas, arrows, out.as_deref()),
    };
    ExitCode::from(status as u8)
}
