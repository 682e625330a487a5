//! `weakhopf`: check, analyse and generate weak braided bimonads from the command line.
//!
//! Exit codes: 0 when every check passes (or the question asked has answer yes),
//! 1 when a check fails or the answer is no, 2 for unreadable or invalid input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "weakhopf", version, about = "Exact checks for weak braided bimonads and weak Hopf monads")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write the structured (JSON) report, or the generated file for `gen`, to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Use double precision instead of exact rationals.
    #[arg(long, global = true)]
    pub float: bool,
    /// Zero threshold in floating-point mode.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Refuse instances of larger dimension.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_dim: usize,
    /// Record the time spent in each section.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Print the full text report before the summary.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the algebra, coalgebra, YB-pair, bimonad and entwining axioms.
    Check { instance: PathBuf },
    /// Build the base object and check its Frobenius structure and actions.
    Derive { instance: PathBuf },
    /// Find a weak antipode, or show that none exists.
    Antipode { instance: PathBuf },
    /// Compute the tensor and cotensor products over the base and the Galois maps.
    Galois { instance: PathBuf },
    /// Coinvariants and the round trip through base modules for a mixed bimodule.
    Hopfmod { instance: PathBuf, module: PathBuf },
    /// Evaluate an expression over the structure maps, e.g. "m ∘ tau ∘ delta".
    Eval { instance: PathBuf, expr: String },
    /// Generate an instance or module file.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// Algebra of a groupoid with at most one arrow between any two objects.
    Groupoid {
        #[arg(long)]
        objects: usize,
        /// Every pair of objects is joined.
        #[arg(long, conflicts_with_all = ["discrete", "arrows"])]
        full: bool,
        /// Identity arrows only.
        #[arg(long, conflicts_with = "arrows")]
        discrete: bool,
        /// Explicit arrows as `s-t` pairs, comma separated.
        #[arg(long)]
        arrows: Option<String>,
        #[command(flatten)]
        opts: GenOpts,
    },
    /// Group algebra of a cyclic group.
    Group {
        #[arg(long)]
        cyclic: usize,
        #[command(flatten)]
        opts: GenOpts,
    },
    /// Monoid algebra from a multiplication table, rows separated by `;`.
    Monoid {
        #[arg(long)]
        table: String,
        #[arg(long, default_value = "monoid")]
        name: String,
        #[command(flatten)]
        opts: GenOpts,
    },
    /// The exterior algebra on one odd primitive generator.
    Superline {
        #[command(flatten)]
        opts: GenOpts,
    },
    /// Transpose every structure map of an instance.
    Dual {
        #[arg(long)]
        from: PathBuf,
        #[command(flatten)]
        opts: GenOpts,
    },
    /// The free mixed bimodule `H⊗V` on a `dim`-dimensional space.
    Komega {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GenOpts {
    /// Omit the pinned expected-results block.
    #[arg(long)]
    pub no_expected: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = commands::run(&cli);
    ExitCode::from(code)
}
