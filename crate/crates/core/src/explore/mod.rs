//! Exhaustive sweeps over the program space and the statistics built on them:
//! halting census, output complexity table, runtime histograms and a few
//! hand-written program families.

mod census;
mod complexity;
mod family;
mod histogram;
mod sweep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lang::Bitstring;

pub use census::{halting_census, CensusRow, HaltingCensus};
pub use complexity::{
    algorithmic_probability, complexity_table, trivial_bound, AlgorithmicProbability, ComplexityEntry,
    ComplexityTable,
};
pub use family::{family_program, Family};
pub use histogram::Histograms;
pub use sweep::{run_position, sweep, sweep_collect, sweep_range, SweepConfig};

/// Outcome of running the program at one canonical position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub position: u64,
    pub length: u32,
    pub halted: bool,
    pub steps: u64,
    /// Empty when the program did not halt.
    pub output: Bitstring,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("programs of length at most {0} do not fit in 64-bit positions")]
    SpaceTooLarge(u32),
    #[error("length {length} is incomplete: saw {seen} of {expected} programs")]
    IncompleteLength { length: u32, seen: u64, expected: String },
    #[error("no halting program produced `{0}`")]
    MissingOutput(String),
}
