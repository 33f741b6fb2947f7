//! The command-line surface of `semiq`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "semiq",
    version,
    about = "Exact invariants of numerical semigroups and their quotients",
    long_about = "Computes Frobenius numbers, genus and Apéry sets of numerical semigroups \
                  and of their quotients by a divisor, through closed forms, a min-coins \
                  reduction, a generic table scan, and a brute-force oracle."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit one JSON record per line.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV with columns input, p, method, frobenius, genus.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frobenius number and genus of the semigroup generated by a list.
    Invariants {
        /// Comma-separated generators, e.g. 3,5. The gcd must be 1.
        gens: String,
        /// Computation path; auto picks the fastest one that applies.
        #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
        method: MethodChoice,
        #[command(flatten)]
        table: TableOpts,
    },

    /// Invariants of the quotient: all x whose multiple p*x lands in the
    /// semigroup.
    Quotient {
        /// Comma-separated generators of the base semigroup.
        gens: String,
        /// The divisor. When p divides no generator, only the oracle path
        /// applies and must be requested explicitly.
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
        method: MethodChoice,
        #[command(flatten)]
        table: TableOpts,
    },

    /// Closed forms for the five structured generator families.
    #[command(subcommand)]
    Family(FamilyCommand),

    /// The Apéry table itself: the least member of each residue class.
    Apery {
        /// Comma-separated generators of the base semigroup.
        gens: String,
        /// Divisor; above 1 the table describes the quotient.
        #[arg(long, default_value_t = 1)]
        p: u64,
        /// Generator to use as the modulus (default: the smallest). Only
        /// meaningful for p = 1; the quotient scan picks its own modulus.
        #[arg(long)]
        modulus: Option<u64>,
        /// Allow tables with more than a million entries.
        #[arg(long)]
        force: bool,
    },

    /// Least number of parts from a list summing to a target.
    Ob {
        /// Comma-separated part sizes, repetition allowed.
        parts: String,
        /// The target sum.
        #[arg(long)]
        m: u64,
        /// Also print one optimal multiset.
        #[arg(long)]
        witness: bool,
    },

    /// Run a sweep plan (TOML) and emit its JSON report.
    Sweep {
        /// Path to the plan file.
        plan: PathBuf,
        /// Worker threads for the run (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// Computation path selector shared by several commands. Not every choice
/// applies to every command; an inapplicable one is a usage error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    /// The fastest path that covers the input.
    Auto,
    /// Family or two-generator formulas.
    ClosedForm,
    /// The structured-quotient reduction.
    MinCoins,
    /// Apéry-table scan.
    Generic,
    /// Bitmap sieve.
    Oracle,
}

#[derive(Debug, Args)]
pub struct TableOpts {
    /// Include the Apéry table in the output.
    #[arg(long)]
    pub apery: bool,
    /// Allow tables with more than a million entries.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// Generators a, ha+d, ha+2d, ..., ha+kd.
    Aap(AapArgs),
    /// Generators a, ha+(K+1)d, ..., ha+kd: a progression missing its
    /// first K steps.
    GapAap(GapAapArgs),
    /// Generators a, ha-d, ha+d.
    PlusMinus(PlusMinusArgs),
    /// Generators a, ha+d, ha+3d, ..., ha+(2k+1)d: odd steps only.
    OddAap(OddAapArgs),
    /// Generators a, d*b_1, ..., d*b_m: a base list with everything but a
    /// scaled by d.
    Scaled(ScaledArgs),
}

#[derive(Debug, Args)]
pub struct FamilyOpts {
    /// Cross-check the result against the brute-force oracle; exit 3 on
    /// disagreement.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    pub method: MethodChoice,
    #[command(flatten)]
    pub table: TableOpts,
}

#[derive(Debug, Args)]
pub struct AapArgs {
    /// The lone generator the divisor must divide.
    #[arg(long)]
    pub a: u64,
    /// Offset multiplier: pattern generators start at h*a.
    #[arg(long)]
    pub h: u64,
    /// Step of the progression; must be coprime to a.
    #[arg(long)]
    pub d: u64,
    /// Number of steps; the family has k pattern generators.
    #[arg(long)]
    pub k: u64,
    /// Divisor of a.
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub opts: FamilyOpts,
}

#[derive(Debug, Args)]
pub struct GapAapArgs {
    /// The lone generator the divisor must divide.
    #[arg(long)]
    pub a: u64,
    /// Offset multiplier: pattern generators start at h*a.
    #[arg(long)]
    pub h: u64,
    /// Step of the progression; must be coprime to a.
    #[arg(long)]
    pub d: u64,
    /// Number of missing initial steps.
    #[arg(long = "K", value_name = "SKIPPED")]
    pub skip: u64,
    /// Last step; generators run from step K+1 to k.
    #[arg(long, value_name = "LAST")]
    pub k: u64,
    /// Divisor of a.
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub opts: FamilyOpts,
}

#[derive(Debug, Args)]
pub struct PlusMinusArgs {
    /// The lone generator the divisor must divide.
    #[arg(long)]
    pub a: u64,
    /// Offset multiplier: the other generators are h*a-d and h*a+d.
    #[arg(long)]
    pub h: u64,
    /// Spread around h*a; must be coprime to a, with h*a-d above 1.
    #[arg(long)]
    pub d: u64,
    /// Divisor of a.
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub opts: FamilyOpts,
}

#[derive(Debug, Args)]
pub struct OddAapArgs {
    /// The lone generator the divisor must divide.
    #[arg(long)]
    pub a: u64,
    /// Offset multiplier: pattern generators start at h*a.
    #[arg(long)]
    pub h: u64,
    /// Step of the progression; must be coprime to a.
    #[arg(long)]
    pub d: u64,
    /// Last odd step is 2k+1.
    #[arg(long)]
    pub k: u64,
    /// Divisor of a.
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub opts: FamilyOpts,
}

#[derive(Debug, Args)]
pub struct ScaledArgs {
    /// The unscaled generator; the divisor must divide it.
    #[arg(long)]
    pub a: u64,
    /// Scale factor applied to the pattern.
    #[arg(long)]
    pub d: u64,
    /// Comma-separated pattern values, e.g. 4,9.
    #[arg(long)]
    pub b: String,
    /// Divisor of a.
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub opts: FamilyOpts,
}
