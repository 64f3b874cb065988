use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{ExploreError, RunRecord};
use crate::enumerate::CountTable;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub halting: u64,
    pub non_halting: u64,
}

fn one_decimal(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

impl CensusRow {
    pub fn total(&self) -> u64 {
        self.halting + self.non_halting
    }

    /// Halting share in percent, rounded to one decimal.
    pub fn halting_percent(&self) -> f64 {
        one_decimal(100.0 * self.halting as f64 / self.total() as f64)
    }

    pub fn non_halting_percent(&self) -> f64 {
        one_decimal(100.0 * self.non_halting as f64 / self.total() as f64)
    }
}

/// Halting and non-halting counts per program length.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaltingCensus {
    pub rows: BTreeMap<u32, CensusRow>,
}

impl HaltingCensus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: &RunRecord) {
        let row = self.rows.entry(r.length).or_default();
        if r.halted {
            row.halting += 1;
        } else {
            row.non_halting += 1;
        }
    }

    pub fn merge(&mut self, other: &HaltingCensus) {
        for (len, row) in &other.rows {
            let mine = self.rows.entry(*len).or_default();
            mine.halting += row.halting;
            mine.non_halting += row.non_halting;
        }
    }

    pub fn row(&self, len: u32) -> Option<CensusRow> {
        self.rows.get(&len).copied()
    }

    pub fn total_halting(&self) -> u64 {
        self.rows.values().map(|r| r.halting).sum()
    }

    /// Fails unless every recorded length was covered in full.
    pub fn check_complete(&self, table: &CountTable) -> Result<(), ExploreError> {
        for (&len, row) in &self.rows {
            let expected = if len <= table.max_len() { table.programs(len).to_u64() } else { None };
            if expected != Some(row.total()) {
                return Err(ExploreError::IncompleteLength {
                    length: len,
                    seen: row.total(),
                    expected: expected.map_or_else(|| "unknown".into(), |e| e.to_string()),
                });
            }
        }
        Ok(())
    }
}

/// Census of complete lengths; errors if any length is only partly covered.
pub fn halting_census<'a>(
    records: impl IntoIterator<Item = &'a RunRecord>,
    table: &CountTable,
) -> Result<HaltingCensus, ExploreError> {
    let mut c = HaltingCensus::new();
    for r in records {
        c.push(r);
    }
    c.check_complete(table)?;
    Ok(c)
}
