//! Exhaustive exploration of the IMP program space.
//!
//! The crate enumerates programs of a small imperative language by length,
//! runs them under a step budget and aggregates what they output, giving
//! empirical upper bounds on the length of the shortest program producing a
//! given binary string.

pub mod enumerate;
pub mod explore;
pub mod halting;
pub mod lang;
mod serde_decimal;
pub mod vm;

pub use enumerate::{CountTable, EnumError};
pub use lang::{parse, render, Arith, Bitstring, Bool, Numeral, ParseError, Program, Register};
pub use vm::{run, run_with, run_with_cycle_check, RunResult, Store, VmConfig};
