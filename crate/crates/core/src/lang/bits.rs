//! Binary strings and the bijection between naturals and strings in
//! canonical (length, then lexicographic) order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A finite string over `{0, 1}`.
///
/// Ordered canonically: shorter strings first, equal lengths compared
/// lexicographically. This is the order in which [`nat_to_bits`] lists them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Bitstring(Vec<bool>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid bit `{0}` in bitstring")]
pub struct BitstringError(pub char);

impl Bitstring {
    pub fn empty() -> Self {
        Bitstring(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Bitstring(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push_str(&mut self, other: &Bitstring) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(mut self, other: &Bitstring) -> Bitstring {
        self.push_str(other);
        self
    }

    /// `ε` for the empty string, the bits otherwise.
    pub fn display_epsilon(&self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else {
            self.to_string()
        }
    }
}

impl Ord for Bitstring {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Bitstring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = BitstringError;

    /// Accepts `0`/`1` text; `ε` alone denotes the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" {
            return Ok(Bitstring::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BitstringError(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Bitstring)
    }
}

impl From<Bitstring> for String {
    fn from(b: Bitstring) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for Bitstring {
    type Error = BitstringError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// The `n`-th string in canonical order; `0 ↦ ε`.
///
/// With `l = ⌊log₂(n+1)⌋`, the result is `n − (2^l − 1)` written in `l` bits.
pub fn nat_to_bits(n: &BigUint) -> Bitstring {
    let mut out = Bitstring::empty();
    append_nat_bits(n, &mut out);
    out
}

/// Appends `nat_to_bits(n)` to `out` without an intermediate allocation.
pub fn append_nat_bits(n: &BigUint, out: &mut Bitstring) {
    if n.is_zero() {
        return;
    }
    let m = n + 1u32;
    let l = m.bits() - 1;
    // n − (2^l − 1) = (n + 1) − 2^l: the low l bits of n + 1.
    out.0.reserve(l as usize);
    for i in (0..l).rev() {
        out.0.push(m.bit(i));
    }
}

/// Position of `b` in canonical order: `2^|b| − 1 + value(b)`.
pub fn bits_to_nat(b: &Bitstring) -> BigUint {
    let mut m = BigUint::one();
    for &bit in &b.0 {
        m <<= 1;
        if bit {
            m += 1u32;
        }
    }
    m - 1u32
}
