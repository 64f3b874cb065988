//! Statistical runtime threshold for declaring programs non-halting.
//!
//! Runtimes of uniformly sampled halting programs are collected; with enough
//! samples (Hoeffding bound) the empirical CDF is within `λ` of the true one
//! with confidence `1 − δ`, and the largest sampled runtime serves as the
//! cut-off beyond which a running program is treated as non-halting.

mod bounds;
mod sample;

use thiserror::Error;

pub use bounds::{confidence_from_sample, parse_rational, rational_from_f64, sample_size, EstimationParams};
pub use sample::{
    draw_halting_sample, ecdf, quantile, threshold, uniform_below, HaltingSample, SampleConfig, SampleEntry,
    DEFAULT_PROBE_BUDGET, DEFAULT_SHARDS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HaltError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("cannot parse `{0}` as a rational number")]
    BadNumber(String),
    #[error("sample is empty")]
    EmptySample,
    #[error("sample size does not fit in 64 bits")]
    Overflow,
    #[error("could not certify the ceiling of the sample-size bound")]
    Uncertified,
}
