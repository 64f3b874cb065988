use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use impspace::explore::Family;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "impspace", version, about = "Enumerate, run and analyze IMP programs")]
pub struct Cli {
    /// Suppress progress messages on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of programs of each length, with running totals.
    Count {
        #[arg(long, default_value_t = 12)]
        max_length: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Program at a position of the chosen enumeration.
    Unrank {
        position: String,
        #[command(flatten)]
        order: Order,
    },
    /// Position of a program in the chosen enumeration.
    Rank {
        program: String,
        #[command(flatten)]
        order: Order,
    },
    /// Execute one program and print `{halted, steps, output}` as JSON.
    Run {
        program: String,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
    },
    /// Draw halting programs uniformly at random and record their runtimes.
    Sample(SampleArgs),
    /// Run every program up to a length; write records, census and histograms.
    Sweep(SweepArgs),
    /// Shortest producer and producer count for every output of a sweep.
    Ctm(CtmArgs),
    /// Generate (and optionally run) one of the counter-loop families.
    Family(FamilyArgs),
    /// Verify the hashes of a job directory and re-execute a few entries.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, Args)]
#[group(multiple = false)]
pub struct Order {
    /// Use the grammar-driven base enumeration.
    #[arg(long)]
    pub base: bool,
    /// Use the length-then-lexicographic enumeration (default).
    #[arg(long)]
    pub canonical: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Workers {
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, env = "IMP_SPACE_WORKERS")]
    pub workers: Option<usize>,
}

impl Workers {
    pub fn resolve(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 9)]
    pub max_length: u32,
    /// Sample size; defaults to the bound implied by --lambda and --delta.
    #[arg(long)]
    pub n: Option<u64>,
    /// Step budget for each probe run.
    #[arg(long, default_value_t = impspace::halting::DEFAULT_PROBE_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "0.001")]
    pub epsilon: String,
    #[arg(long, default_value = "0.0005")]
    pub lambda: String,
    #[arg(long, default_value = "0.001")]
    pub delta: String,
    /// Independent random streams.
    #[arg(long, default_value_t = impspace::halting::DEFAULT_SHARDS)]
    pub shards: u32,
    #[command(flatten)]
    pub workers: Workers,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub max_length: u32,
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
    /// Skip writing the per-program records file.
    #[arg(long)]
    pub no_records: bool,
    #[command(flatten)]
    pub workers: Workers,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CtmArgs {
    #[arg(long)]
    pub max_length: u32,
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
    /// Print the algorithmic probability of these outputs (`ε` for empty).
    #[arg(long = "query")]
    pub queries: Vec<String>,
    #[command(flatten)]
    pub workers: Workers,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// pows2, fact, expt or expt-pows2
    pub family: Family,
    #[arg(long)]
    pub n: u64,
    /// Emit every parameter from --n up to this value.
    #[arg(long)]
    pub to: Option<u64>,
    /// Execute the programs.
    #[arg(long)]
    pub run: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write `family.csv` and a manifest here instead of printing.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    pub dir: PathBuf,
    /// Entries to re-execute.
    #[arg(long, default_value_t = 100)]
    pub spot_checks: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Re-run the whole job and compare every artifact byte for byte.
    #[arg(long)]
    pub replay: bool,
    #[command(flatten)]
    pub workers: Workers,
}
