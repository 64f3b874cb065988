//! Counting and enumerating the program space.

mod base;
mod counts;
pub mod pairing;
mod sorted;

use num_bigint::BigUint;
use thiserror::Error;

pub use base::{rank_base, rank_base_arith, rank_base_bool, unrank_base, unrank_base_arith, unrank_base_bool};
pub use counts::{count_programs, cumulative_count, CountTable};
pub use sorted::{rank_canonical, unrank_canonical, unrank_fixed_length};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("index {index} out of range: there are {count} programs of length {len}")]
    OutOfRange { len: u32, index: BigUint, count: BigUint },
    #[error("count table covers lengths up to {max_len}, length {len} requested")]
    TableTooShort { len: u32, max_len: u32 },
    #[error("position lies beyond the count table (lengths up to {max_len})")]
    PositionBeyondTable { max_len: u32 },
}
