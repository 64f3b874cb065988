use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{quantile_rank, EstimationParams};
use super::HaltError;
use crate::enumerate::CountTable;
use crate::vm::{run_with_cycle_check, VmConfig};

/// Fraction of runtimes not exceeding `t`.
pub fn ecdf(runtimes: &[u64], t: u64) -> Result<Ratio<u64>, HaltError> {
    if runtimes.is_empty() {
        return Err(HaltError::EmptySample);
    }
    let below = runtimes.iter().filter(|&&r| r <= t).count() as u64;
    Ok(Ratio::new(below, runtimes.len() as u64))
}

/// Uniform draw from `[0, bound)` by rejection over the smallest covering
/// power of two. `bound` must be positive.
pub fn uniform_below<R: RngCore>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(*bound > BigUint::ZERO, "empty range");
    let bits = (bound - 1u32).bits();
    if bits == 0 {
        return BigUint::ZERO;
    }
    let words = bits.div_ceil(32) as usize;
    let spare = words as u64 * 32 - bits;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        digits[words - 1] &= u32::MAX >> spare;
        let v = BigUint::new(digits);
        if v < *bound {
            return v;
        }
    }
}

/// One halting program drawn during sampling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEntry {
    #[serde(with = "crate::serde_decimal")]
    pub position: BigUint,
    pub length: u32,
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub max_length: u32,
    pub n: u64,
    pub probe_budget: u64,
    pub seed: u64,
    /// Independent random streams; the sample depends on this but not on
    /// how many threads run them.
    pub shards: u32,
    pub params: EstimationParams,
}

pub const DEFAULT_PROBE_BUDGET: u64 = 10_000;
pub const DEFAULT_SHARDS: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaltingSample {
    pub config: SampleConfig,
    #[serde(with = "crate::serde_decimal")]
    pub space_size: BigUint,
    /// Halting programs, shard by shard in draw order.
    pub entries: Vec<SampleEntry>,
    /// Halting programs kept, by program length.
    pub per_length: BTreeMap<u32, u64>,
    /// Draws discarded because they did not halt within the probe budget.
    pub rejections: u64,
}

impl HaltingSample {
    pub fn runtimes(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.steps).collect()
    }

    /// The threshold `T`: longest runtime in the sample.
    pub fn threshold(&self) -> Result<u64, HaltError> {
        threshold(&self.runtimes())
    }

    /// `(1 − ε)`-quantile of the runtimes.
    pub fn quantile(&self) -> Result<u64, HaltError> {
        quantile(&self.runtimes(), &self.config.params.epsilon)
    }

    pub fn ecdf(&self, t: u64) -> Result<Ratio<u64>, HaltError> {
        ecdf(&self.runtimes(), t)
    }

    /// Share of all draws that halted.
    pub fn halting_rate(&self) -> f64 {
        let kept = self.entries.len() as f64;
        kept / (kept + self.rejections as f64)
    }
}

pub fn threshold(runtimes: &[u64]) -> Result<u64, HaltError> {
    runtimes.iter().copied().max().ok_or(HaltError::EmptySample)
}

/// Smallest runtime `t` with `ecdf(t) ≥ 1 − ε`.
pub fn quantile(runtimes: &[u64], epsilon: &BigRational) -> Result<u64, HaltError> {
    if runtimes.is_empty() {
        return Err(HaltError::EmptySample);
    }
    let mut sorted = runtimes.to_vec();
    sorted.sort_unstable();
    Ok(sorted[quantile_rank(epsilon, sorted.len()) - 1])
}

struct ShardResult {
    entries: Vec<SampleEntry>,
    rejections: u64,
}

fn draw_shard(table: &CountTable, space: &BigUint, cfg: &SampleConfig, shard: u32, quota: u64) -> ShardResult {
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    rng.set_stream(shard as u64);
    let vm = VmConfig::with_budget(cfg.probe_budget);
    let mut entries = Vec::with_capacity(quota as usize);
    let mut rejections = 0;
    while (entries.len() as u64) < quota {
        let position = uniform_below(&mut rng, space);
        let program = table.unrank_canonical(&position).expect("table covers the sampled space");
        let r = run_with_cycle_check(&program, &vm);
        if r.halted {
            entries.push(SampleEntry { position, length: program.len(), steps: r.steps });
        } else {
            rejections += 1;
        }
    }
    ShardResult { entries, rejections }
}

/// Samples `cfg.n` halting programs uniformly from all programs of length at
/// most `cfg.max_length`, on the current rayon pool.
pub fn draw_halting_sample(cfg: &SampleConfig) -> Result<HaltingSample, HaltError> {
    if cfg.n == 0 {
        return Err(HaltError::Domain("sample size must be at least 1".into()));
    }
    if cfg.shards == 0 {
        return Err(HaltError::Domain("at least one shard is required".into()));
    }
    let table = CountTable::new(cfg.max_length);
    let space = table.cumulative(cfg.max_length).clone();
    if space == BigUint::ZERO {
        return Err(HaltError::Domain(format!("no programs of length at most {}", cfg.max_length)));
    }
    let shards = cfg.shards as u64;
    let quotas: Vec<(u32, u64)> =
        (0..shards).map(|s| (s as u32, cfg.n / shards + u64::from(s < cfg.n % shards))).collect();
    let results: Vec<ShardResult> =
        quotas.par_iter().map(|&(s, q)| draw_shard(&table, &space, cfg, s, q)).collect();

    let mut entries = Vec::with_capacity(cfg.n as usize);
    let mut rejections = 0;
    for r in results {
        entries.extend(r.entries);
        rejections += r.rejections;
    }
    let mut per_length = BTreeMap::new();
    for e in &entries {
        *per_length.entry(e.length).or_insert(0) += 1;
    }
    Ok(HaltingSample { config: cfg.clone(), space_size: space, entries, per_length, rejections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halting::parse_rational;

    #[test]
    fn ecdf_examples() {
        let rt = [2, 3, 3, 9];
        assert_eq!(ecdf(&rt, 3).unwrap(), Ratio::new(3, 4));
        assert_eq!(ecdf(&rt, 1).unwrap(), Ratio::new(0, 1));
        assert_eq!(ecdf(&rt, 9).unwrap(), Ratio::new(1, 1));
        assert_eq!(ecdf(&[], 9), Err(HaltError::EmptySample));
    }

    #[test]
    fn threshold_and_quantile() {
        let rt: Vec<u64> = (1..=100).collect();
        let eps = parse_rational("0.01").unwrap();
        assert_eq!(quantile(&rt, &eps).unwrap(), 99);
        assert_eq!(threshold(&rt).unwrap(), 100);
        assert_eq!(threshold(&[5]).unwrap(), 5);
        assert_eq!(threshold(&[2, 9, 4]).unwrap(), 9);
        assert!(threshold(&[]).is_err());
    }

    #[test]
    fn uniform_draws_stay_in_range() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let one = BigUint::from(1u32);
        assert_eq!(uniform_below(&mut rng, &one), BigUint::ZERO);
        let bound = BigUint::from(5u32);
        let mut seen = [0u32; 5];
        for _ in 0..5000 {
            let v = uniform_below(&mut rng, &bound);
            seen[usize::try_from(v.to_u32_digits().first().copied().unwrap_or(0)).unwrap()] += 1;
        }
        assert!(seen.iter().all(|&c| c > 800 && c < 1200), "{seen:?}");
        let huge: BigUint = "123089621000000000000000000000".parse().unwrap();
        for _ in 0..100 {
            assert!(uniform_below(&mut rng, &huge) < huge);
        }
    }
}
