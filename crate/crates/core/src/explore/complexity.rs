use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{ExploreError, RunRecord};
use crate::lang::{bits_to_nat, Arith, Bitstring, Numeral, Program, Register};

/// Shortest known producer of one output string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityEntry {
    pub output: Bitstring,
    pub best_length: u32,
    /// Least canonical position among producers of length `best_length`.
    pub witness: u64,
    /// Halting programs producing this output.
    pub producers: u64,
}

/// Output string → shortest producer, folded over run records.
#[derive(Clone, Debug, Default)]
pub struct ComplexityTable {
    entries: HashMap<Bitstring, ComplexityEntry>,
    total_halting: u64,
}

impl ComplexityTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: &RunRecord) {
        if !r.halted {
            return;
        }
        self.total_halting += 1;
        match self.entries.get_mut(&r.output) {
            Some(e) => {
                e.producers += 1;
                if (r.length, r.position) < (e.best_length, e.witness) {
                    e.best_length = r.length;
                    e.witness = r.position;
                }
            }
            None => {
                let e = ComplexityEntry {
                    output: r.output.clone(),
                    best_length: r.length,
                    witness: r.position,
                    producers: 1,
                };
                self.entries.insert(r.output.clone(), e);
            }
        }
    }

    pub fn merge(&mut self, other: ComplexityTable) {
        self.total_halting += other.total_halting;
        for (k, o) in other.entries {
            match self.entries.get_mut(&k) {
                Some(e) => {
                    e.producers += o.producers;
                    if (o.best_length, o.witness) < (e.best_length, e.witness) {
                        e.best_length = o.best_length;
                        e.witness = o.witness;
                    }
                }
                None => {
                    self.entries.insert(k, o);
                }
            }
        }
    }

    pub fn get(&self, output: &Bitstring) -> Option<&ComplexityEntry> {
        self.entries.get(output)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_halting(&self) -> u64 {
        self.total_halting
    }

    /// Entries in canonical order of their outputs.
    pub fn sorted(&self) -> Vec<&ComplexityEntry> {
        let mut v: Vec<_> = self.entries.values().collect();
        v.sort_by(|a, b| a.output.cmp(&b.output));
        v
    }

    pub fn probability(&self, output: &Bitstring) -> Result<AlgorithmicProbability, ExploreError> {
        algorithmic_probability(self, output, self.total_halting)
    }
}

/// Builds the table from a stream of records.
pub fn complexity_table<'a>(records: impl IntoIterator<Item = &'a RunRecord>) -> ComplexityTable {
    let mut t = ComplexityTable::new();
    for r in records {
        t.push(r);
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmicProbability {
    pub producers: u64,
    pub total_halting: u64,
    pub probability: f64,
    /// `−log₂ probability`.
    pub complexity_bits: f64,
}

/// Share of halting programs that produce `output`.
pub fn algorithmic_probability(
    table: &ComplexityTable,
    output: &Bitstring,
    total_halting: u64,
) -> Result<AlgorithmicProbability, ExploreError> {
    let entry = table.get(output).ok_or_else(|| ExploreError::MissingOutput(output.display_epsilon()))?;
    if total_halting == 0 || entry.producers > total_halting {
        return Err(ExploreError::Config(format!(
            "total of {total_halting} halting programs cannot cover {} producers",
            entry.producers
        )));
    }
    let probability = entry.producers as f64 / total_halting as f64;
    Ok(AlgorithmicProbability {
        producers: entry.producers,
        total_halting,
        probability,
        complexity_bits: -probability.log2(),
    })
}

/// The program that spells `b` out directly, with its length: `skip` for
/// the empty string, otherwise `x[0] := n` where `n` is the position of `b`
/// in canonical order.
pub fn trivial_bound(b: &Bitstring) -> (Program, u32) {
    if b.is_empty() {
        return (Program::Skip, 1);
    }
    let n: BigUint = bits_to_nat(b);
    let rhs = Numeral(n);
    let len = 3 + rhs.digits();
    (Program::Assign(Register::new(0u32), Arith::Num(rhs)), len)
}
