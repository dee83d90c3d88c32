use clap::{Args, Parser, Subcommand};

use pjordan::oracle::DEFAULT_MAX_DIM;

#[derive(Parser, Debug)]
#[command(
    name = "pjordan",
    version,
    about = "Jordan blocks of order-p unipotent elements in irreducible representations"
)]
pub struct Cli {
    /// Emit JSON Lines (default).
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,
    /// Emit a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,
    /// Largest module dimension the matrix oracle will build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run the oracle on constructions that are not certified irreducible.
    #[arg(long, global = true)]
    pub allow_uncertified: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Predict sigma, c_x, k and the size-p bound for one case.
    Predict(PredictArgs),
    /// Build the module over GF(p) and compare its Jordan type with the prediction.
    Oracle(OracleArgs),
    /// Sweep all classes and certified constructions and check the size-p block bound.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1(SweepArgs),
    /// Size-p counts of S^a for a regular class of G_m across a range of ranks.
    #[command(name = "prop2-scan")]
    Prop2Scan(ScanArgs),
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    /// Family: A, B, C or D.
    #[arg(short = 'f', long)]
    pub family: String,
    #[arg(short = 'r', long)]
    pub rank: usize,
    #[arg(short = 'p', long)]
    pub p: u32,
    /// Jordan partition of the natural module, comma separated.
    #[arg(long = "part")]
    pub partition: String,
}

#[derive(Args, Debug)]
pub struct PredictArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Highest weight in fundamental coordinates, comma separated.
    #[arg(short = 'w', long)]
    pub weight: String,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Construction, least significant Frobenius level first, e.g. `sym:3`, `ext:2`, `sym:2,ext:1`.
    #[arg(short = 'c', long)]
    pub construction: String,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Families, comma separated.
    #[arg(long, default_value = "A")]
    pub families: String,
    /// Ranks, e.g. `4-6` or `3,5`.
    #[arg(long)]
    pub ranks: String,
    /// Primes, comma separated.
    #[arg(long, default_value = "3,5")]
    pub primes: String,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(short = 'f', long, default_value = "A")]
    pub family: String,
    /// Rank of the subgroup G_m in which x is regular.
    #[arg(short = 'm', long)]
    pub m: usize,
    /// Degree of the symmetric power.
    #[arg(short = 'a', long)]
    pub a: usize,
    #[arg(short = 'p', long)]
    pub p: u32,
    /// Ranks, e.g. `5-8`.
    #[arg(long)]
    pub ranks: String,
}
