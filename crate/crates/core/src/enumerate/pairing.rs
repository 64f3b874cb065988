//! Cantor pairing over unbounded naturals, and its n-tuple generalization by
//! right nesting. Every component of a tuple is at most its code.

use num_bigint::BigUint;
use num_traits::One;

/// `π(a, b) = (a + b)(a + b + 1)/2 + b`.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let w = a + b;
    let tri = (&w * (&w + 1u32)) >> 1;
    tri + b
}

/// Inverse of [`pair`].
pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = ⌊(√(8z + 1) − 1) / 2⌋
    let disc: BigUint = (z << 3) + 1u32;
    let w = (disc.sqrt() - BigUint::one()) >> 1;
    let tri = (&w * (&w + 1u32)) >> 1;
    let b = z - tri;
    let a = w - &b;
    (a, b)
}

/// Encodes a tuple of any arity ≥ 1 as `π(x₀, π(x₁, … π(xₙ₋₂, xₙ₋₁)))`.
pub fn pair_tuple(xs: &[BigUint]) -> BigUint {
    let (last, init) = xs.split_last().expect("tuple arity must be at least 1");
    init.iter().rev().fold(last.clone(), |acc, x| pair(x, &acc))
}

pub fn unpair_tuple(z: &BigUint, arity: usize) -> Vec<BigUint> {
    assert!(arity >= 1, "tuple arity must be at least 1");
    let mut out = Vec::with_capacity(arity);
    let mut rest = z.clone();
    for _ in 1..arity {
        let (a, b) = unpair(&rest);
        out.push(a);
        rest = b;
    }
    out.push(rest);
    out
}
