use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::RunRecord;

/// Frequency tables over halting runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histograms {
    /// program length → steps → count
    pub steps_by_length: BTreeMap<u32, BTreeMap<u64, u64>>,
    /// output length → count
    pub output_length: BTreeMap<usize, u64>,
    /// program length → output length → count
    pub output_length_by_length: BTreeMap<u32, BTreeMap<usize, u64>>,
}

impl Histograms {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: &RunRecord) {
        if !r.halted {
            return;
        }
        *self.steps_by_length.entry(r.length).or_default().entry(r.steps).or_default() += 1;
        *self.output_length.entry(r.output.len()).or_default() += 1;
        *self.output_length_by_length.entry(r.length).or_default().entry(r.output.len()).or_default() += 1;
    }

    pub fn merge(&mut self, other: &Histograms) {
        for (l, m) in &other.steps_by_length {
            let mine = self.steps_by_length.entry(*l).or_default();
            for (k, c) in m {
                *mine.entry(*k).or_default() += c;
            }
        }
        for (k, c) in &other.output_length {
            *self.output_length.entry(*k).or_default() += c;
        }
        for (l, m) in &other.output_length_by_length {
            let mine = self.output_length_by_length.entry(*l).or_default();
            for (k, c) in m {
                *mine.entry(*k).or_default() += c;
            }
        }
    }

    /// Longest halting runtime seen.
    pub fn max_steps(&self) -> Option<u64> {
        self.steps_by_length.values().filter_map(|m| m.keys().next_back().copied()).max()
    }
}
