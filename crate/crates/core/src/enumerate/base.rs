//! Grammar-driven bijection between naturals and syntax trees.
//!
//! Each position is split top-down: finitely many constant alternatives take
//! the first positions, the remainder is divided by the number of recursive
//! alternatives (quotient carries the children, remainder picks the
//! production) and the quotient is decoded with Cantor pairing. Since a code
//! is never smaller than its components and the quotient is strictly smaller
//! than the position, every subprogram sits at a smaller position than the
//! program containing it.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::pairing::{pair, pair_tuple, unpair, unpair_tuple};
use crate::lang::{Arith, Bool, Numeral, Program, Register};

const PROGRAM_RECURSIVE: u32 = 4;
const ARITH_ALTERNATIVES: u32 = 5;
const BOOL_CONSTANTS: u32 = 2;
const BOOL_RECURSIVE: u32 = 5;

fn split(k: &BigUint, alternatives: u32) -> (BigUint, u32) {
    let (q, r) = k.div_rem(&BigUint::from(alternatives));
    (q, r.to_u32().unwrap())
}

fn join(q: BigUint, alternatives: u32, selector: u32) -> BigUint {
    q * alternatives + selector
}

pub fn unrank_base_arith(k: &BigUint) -> Arith {
    let (q, sel) = split(k, ARITH_ALTERNATIVES);
    match sel {
        0 => Arith::Num(Numeral(q)),
        1 => Arith::Reg(Register(Numeral(q))),
        _ => {
            let (a, b) = unpair(&q);
            let (a, b) = (unrank_base_arith(&a), unrank_base_arith(&b));
            match sel {
                2 => Arith::add(a, b),
                3 => Arith::sub(a, b),
                _ => Arith::mul(a, b),
            }
        }
    }
}

pub fn rank_base_arith(a: &Arith) -> BigUint {
    let (q, sel) = match a {
        Arith::Num(n) => (n.value().clone(), 0),
        Arith::Reg(r) => (r.index().clone(), 1),
        Arith::Add(x, y) => (pair(&rank_base_arith(x), &rank_base_arith(y)), 2),
        Arith::Sub(x, y) => (pair(&rank_base_arith(x), &rank_base_arith(y)), 3),
        Arith::Mul(x, y) => (pair(&rank_base_arith(x), &rank_base_arith(y)), 4),
    };
    join(q, ARITH_ALTERNATIVES, sel)
}

pub fn unrank_base_bool(k: &BigUint) -> Bool {
    if *k < BigUint::from(BOOL_CONSTANTS) {
        return if k.is_zero() { Bool::True } else { Bool::False };
    }
    let (q, sel) = split(&(k - BOOL_CONSTANTS), BOOL_RECURSIVE);
    match sel {
        2 => Bool::not(unrank_base_bool(&q)),
        0 | 1 => {
            let (a, b) = unpair(&q);
            let (a, b) = (unrank_base_arith(&a), unrank_base_arith(&b));
            if sel == 0 {
                Bool::eq(a, b)
            } else {
                Bool::lt(a, b)
            }
        }
        _ => {
            let (a, b) = unpair(&q);
            let (a, b) = (unrank_base_bool(&a), unrank_base_bool(&b));
            if sel == 3 {
                Bool::or(a, b)
            } else {
                Bool::and(a, b)
            }
        }
    }
}

pub fn rank_base_bool(b: &Bool) -> BigUint {
    let (q, sel) = match b {
        Bool::True => return BigUint::zero(),
        Bool::False => return BigUint::from(1u32),
        Bool::Eq(x, y) => (pair(&rank_base_arith(x), &rank_base_arith(y)), 0),
        Bool::Lt(x, y) => (pair(&rank_base_arith(x), &rank_base_arith(y)), 1),
        Bool::Not(x) => (rank_base_bool(x), 2),
        Bool::Or(x, y) => (pair(&rank_base_bool(x), &rank_base_bool(y)), 3),
        Bool::And(x, y) => (pair(&rank_base_bool(x), &rank_base_bool(y)), 4),
    };
    join(q, BOOL_RECURSIVE, sel) + BOOL_CONSTANTS
}

/// Program at base position `k`. Total and bijective.
pub fn unrank_base(k: &BigUint) -> Program {
    if k.is_zero() {
        return Program::Skip;
    }
    let (q, sel) = split(&(k - 1u32), PROGRAM_RECURSIVE);
    match sel {
        0 => {
            let (x, a) = unpair(&q);
            Program::Assign(Register(Numeral(x)), unrank_base_arith(&a))
        }
        1 => {
            let (p, r) = unpair(&q);
            Program::seq(unrank_base(&p), unrank_base(&r))
        }
        2 => {
            let parts = unpair_tuple(&q, 3);
            Program::if_(unrank_base_bool(&parts[0]), unrank_base(&parts[1]), unrank_base(&parts[2]))
        }
        _ => {
            let (b, p) = unpair(&q);
            Program::while_(unrank_base_bool(&b), unrank_base(&p))
        }
    }
}

/// Inverse of [`unrank_base`].
pub fn rank_base(p: &Program) -> BigUint {
    let (q, sel) = match p {
        Program::Skip => return BigUint::zero(),
        Program::Assign(x, a) => (pair(x.index(), &rank_base_arith(a)), 0),
        Program::Seq(u, v) => (pair(&rank_base(u), &rank_base(v)), 1),
        Program::If(b, u, v) => (pair_tuple(&[rank_base_bool(b), rank_base(u), rank_base(v)]), 2),
        Program::While(b, u) => (pair(&rank_base_bool(b), &rank_base(u)), 3),
    };
    join(q, PROGRAM_RECURSIVE, sel) + 1u32
}
