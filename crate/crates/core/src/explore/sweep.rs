use std::ops::Range;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ExploreError, RunRecord};
use crate::enumerate::CountTable;
use crate::vm::{run_with_cycle_check, VmConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_length: u32,
    pub budget: u64,
    pub workers: usize,
    /// Positions handed to a worker at a time.
    pub chunk_size: u64,
}

impl SweepConfig {
    pub fn new(max_length: u32, budget: u64, workers: usize) -> Self {
        SweepConfig { max_length, budget, workers, chunk_size: 4096 }
    }
}

/// Executes one canonical position.
pub fn run_position(table: &CountTable, position: u64, vm: &VmConfig) -> RunRecord {
    let program = table
        .unrank_canonical(&BigUint::from(position))
        .expect("sweep table covers every swept position");
    let r = run_with_cycle_check(&program, vm);
    RunRecord {
        position,
        length: program.len(),
        halted: r.halted,
        steps: r.steps,
        output: if r.halted { r.output() } else { Default::default() },
    }
}

/// Runs every position in `range` and feeds the records to `sink` in
/// position order, whatever the number of workers.
pub fn sweep_range<F>(
    table: &CountTable,
    range: Range<u64>,
    cfg: &SweepConfig,
    mut sink: F,
) -> Result<(), ExploreError>
where
    F: FnMut(RunRecord),
{
    if cfg.budget == 0 {
        return Err(ExploreError::Config("budget must be at least 1".into()));
    }
    if cfg.workers == 0 {
        return Err(ExploreError::Config("at least one worker is required".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| ExploreError::Config(e.to_string()))?;
    let vm = VmConfig::with_budget(cfg.budget);
    let chunk = cfg.chunk_size.max(1);
    let wave = chunk * cfg.workers as u64 * 4;

    let mut start = range.start;
    while start < range.end {
        let end = start.saturating_add(wave).min(range.end);
        let chunks: Vec<Range<u64>> = (start..end)
            .step_by(chunk as usize)
            .map(|s| s..(s + chunk).min(end))
            .collect();
        let batches: Vec<Vec<RunRecord>> = pool.install(|| {
            chunks
                .into_par_iter()
                .map(|r| r.map(|pos| run_position(table, pos, &vm)).collect())
                .collect()
        });
        for rec in batches.into_iter().flatten() {
            sink(rec);
        }
        start = end;
    }
    Ok(())
}

/// Runs every program of length at most `cfg.max_length`.
pub fn sweep<F>(cfg: &SweepConfig, sink: F) -> Result<(), ExploreError>
where
    F: FnMut(RunRecord),
{
    let table = CountTable::new(cfg.max_length);
    let total = table
        .cumulative(cfg.max_length)
        .to_u64()
        .ok_or(ExploreError::SpaceTooLarge(cfg.max_length))?;
    sweep_range(&table, 0..total, cfg, sink)
}

/// [`sweep`] collected into a vector.
pub fn sweep_collect(cfg: &SweepConfig) -> Result<Vec<RunRecord>, ExploreError> {
    let mut out = Vec::new();
    sweep(cfg, |r| out.push(r))?;
    Ok(out)
}
