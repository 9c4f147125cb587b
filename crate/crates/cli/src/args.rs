use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pekr_core::family::PairOrder;
use pekr_core::io::Format;
use pekr_core::search::Mode;
use pekr_core::verify::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(
    name = "pekr",
    version,
    about = "Exact computations on t-intersecting families of set partitions"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "text")]
    pub format: Format,

    /// Worker threads for the parallel kernels.
    #[arg(long, global = true, env = "PEKR_THREADS")]
    pub threads: Option<usize>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Include wall-clock times in reports.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bell and singleton-free Bell numbers up to n.
    Bell {
        #[arg(long)]
        n: usize,
    },
    /// List the partitions of [n] in lexicographic order of their RGS.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print restricted-growth sequences instead of blocks.
        #[arg(long)]
        rgs: bool,
        /// Print only the number of partitions.
        #[arg(long)]
        count: bool,
    },
    /// Check whether a family is t-intersecting and whether trivially so.
    Intersect {
        file: PathBuf,
        /// Overrides the t from the file header.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Apply the (i, j)-splitting to every member of a family.
    Split {
        file: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Split repeatedly until the family is compressed.
    Compress {
        file: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value = "lex")]
        order: PairOrder,
    },
    /// Build a trivial or Hilton-Milner type family.
    #[command(subcommand)]
    Construct(Construct),
    /// Find (a_1..a_t; b) with H(a_1..a_t, b) equal to the family.
    Recognize {
        file: PathBuf,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Check the counting, splitting and extremal claims.
    Verify(VerifyArgs),
    /// Exact maximum (non-trivial) t-intersecting family.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "unrestricted")]
        mode: Mode,
        /// Budget in seconds; 0 means unlimited.
        #[arg(long, default_value_t = 300)]
        timeout: u64,
    },
    /// Find from which n an inequality holds.
    Scan {
        /// less, less02, less03 or eq5.
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        c: Option<u64>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// All partitions having each anchor as a singleton.
    Trivial {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        anchors: Vec<usize>,
    },
    /// H(a_1..a_t, b).
    Hm {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        anchors: Vec<usize>,
        #[arg(long)]
        pivot: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Claim identifiers; all claims when omitted.
    #[arg(long, value_delimiter = ',')]
    pub claims: Vec<String>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub t_min: Option<usize>,
    #[arg(long)]
    pub t_max: Option<usize>,
    /// Random families per (n, t) in the sampled claims.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Per-search budget in seconds; 0 means unlimited.
    #[arg(long, default_value_t = 300)]
    pub timeout: u64,
}
