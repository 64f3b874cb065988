//! The IMP language: syntax trees, concrete syntax, length metric and the
//! natural-number/bitstring codec used for program output.

mod ast;
mod bits;
mod parse;

pub use ast::{program_length, render, Arith, Bool, Numeral, Program, Register};
pub(crate) use ast::decimal_digits;
pub use bits::{append_nat_bits, bits_to_nat, nat_to_bits, Bitstring, BitstringError};
pub use parse::{parse, parse_arith, parse_bool, ParseError};
