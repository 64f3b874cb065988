//! Brute-force program generator and order, written straight from the
//! grammar and the length metric without the crate's counting machinery.

#![allow(dead_code)]

use std::cmp::Ordering;

use impspace::{Arith, Bool, Numeral, Program, Register};

fn numerals(d: u32) -> Vec<Numeral> {
    match d {
        0 => vec![],
        1 => (0..10u64).map(Numeral::from).collect(),
        _ => (10u64.pow(d - 1)..10u64.pow(d)).map(Numeral::from).collect(),
    }
}

pub fn registers(len: u32) -> Vec<Register> {
    if len < 2 {
        return vec![];
    }
    numerals(len - 1).into_iter().map(Register).collect()
}

pub fn ariths(len: u32) -> Vec<Arith> {
    let mut out: Vec<Arith> = numerals(len).into_iter().map(Arith::Num).collect();
    out.extend(registers(len).into_iter().map(Arith::Reg));
    for ctor in [Arith::add as fn(Arith, Arith) -> Arith, Arith::sub, Arith::mul] {
        for l in 1..len.saturating_sub(1) {
            for a in ariths(l) {
                for b in ariths(len - 1 - l) {
                    out.push(ctor(a.clone(), b));
                }
            }
        }
    }
    out
}

pub fn bools(len: u32) -> Vec<Bool> {
    let mut out = Vec::new();
    if len == 1 {
        out.push(Bool::True);
        out.push(Bool::False);
    }
    for ctor in [Bool::eq as fn(Arith, Arith) -> Bool, Bool::lt] {
        for l in 1..len.saturating_sub(1) {
            for a in ariths(l) {
                for b in ariths(len - 1 - l) {
                    out.push(ctor(a.clone(), b));
                }
            }
        }
    }
    if len >= 2 {
        out.extend(bools(len - 1).into_iter().map(Bool::not));
    }
    for ctor in [Bool::or as fn(Bool, Bool) -> Bool, Bool::and] {
        for l in 1..len.saturating_sub(1) {
            for a in bools(l) {
                for b in bools(len - 1 - l) {
                    out.push(ctor(a.clone(), b));
                }
            }
        }
    }
    out
}

pub fn programs(len: u32) -> Vec<Program> {
    let mut out = Vec::new();
    if len == 1 {
        out.push(Program::Skip);
    }
    for lr in 2..len {
        for r in registers(lr) {
            for a in ariths(len - 1 - lr) {
                out.push(Program::assign(r.clone(), a));
            }
        }
    }
    for l in 1..len.saturating_sub(1) {
        for p in programs(l) {
            for q in programs(len - 1 - l) {
                out.push(Program::seq(p.clone(), q));
            }
        }
    }
    for lb in 1..len {
        for b in bools(lb) {
            for l1 in 1..len.saturating_sub(lb + 1) {
                let l2 = len - 1 - lb - l1;
                for p in programs(l1) {
                    for q in programs(l2) {
                        out.push(Program::if_(b.clone(), p.clone(), q));
                    }
                }
            }
        }
    }
    for lb in 1..len.saturating_sub(1) {
        for b in bools(lb) {
            for p in programs(len - 1 - lb) {
                out.push(Program::while_(b.clone(), p));
            }
        }
    }
    out
}

fn arith_rank(a: &Arith) -> u8 {
    match a {
        Arith::Num(_) => 0,
        Arith::Reg(_) => 1,
        Arith::Add(..) => 2,
        Arith::Sub(..) => 3,
        Arith::Mul(..) => 4,
    }
}

pub fn cmp_arith(a: &Arith, b: &Arith) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| arith_rank(a).cmp(&arith_rank(b))).then_with(|| match (a, b) {
        (Arith::Num(x), Arith::Num(y)) => x.value().cmp(y.value()),
        (Arith::Reg(x), Arith::Reg(y)) => x.index().cmp(y.index()),
        (Arith::Add(a1, a2), Arith::Add(b1, b2))
        | (Arith::Sub(a1, a2), Arith::Sub(b1, b2))
        | (Arith::Mul(a1, a2), Arith::Mul(b1, b2)) => cmp_arith(a1, b1).then_with(|| cmp_arith(a2, b2)),
        _ => unreachable!(),
    })
}

fn bool_rank(b: &Bool) -> u8 {
    match b {
        Bool::True => 0,
        Bool::False => 1,
        Bool::Eq(..) => 2,
        Bool::Lt(..) => 3,
        Bool::Not(_) => 4,
        Bool::Or(..) => 5,
        Bool::And(..) => 6,
    }
}

pub fn cmp_bool(a: &Bool, b: &Bool) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| bool_rank(a).cmp(&bool_rank(b))).then_with(|| match (a, b) {
        (Bool::True, Bool::True) | (Bool::False, Bool::False) => Ordering::Equal,
        (Bool::Eq(a1, a2), Bool::Eq(b1, b2)) | (Bool::Lt(a1, a2), Bool::Lt(b1, b2)) => {
            cmp_arith(a1, b1).then_with(|| cmp_arith(a2, b2))
        }
        (Bool::Not(x), Bool::Not(y)) => cmp_bool(x, y),
        (Bool::Or(a1, a2), Bool::Or(b1, b2)) | (Bool::And(a1, a2), Bool::And(b1, b2)) => {
            cmp_bool(a1, b1).then_with(|| cmp_bool(a2, b2))
        }
        _ => unreachable!(),
    })
}

fn prog_rank(p: &Program) -> u8 {
    match p {
        Program::Skip => 0,
        Program::Assign(..) => 1,
        Program::Seq(..) => 2,
        Program::If(..) => 3,
        Program::While(..) => 4,
    }
}

/// Length first, then production, then children left to right.
pub fn cmp_program(a: &Program, b: &Program) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| prog_rank(a).cmp(&prog_rank(b))).then_with(|| match (a, b) {
        (Program::Skip, Program::Skip) => Ordering::Equal,
        (Program::Assign(r1, a1), Program::Assign(r2, a2)) => {
            r1.len().cmp(&r2.len()).then_with(|| r1.index().cmp(r2.index())).then_with(|| cmp_arith(a1, a2))
        }
        (Program::Seq(p1, q1), Program::Seq(p2, q2)) => cmp_program(p1, p2).then_with(|| cmp_program(q1, q2)),
        (Program::If(b1, p1, q1), Program::If(b2, p2, q2)) => cmp_bool(b1, b2)
            .then_with(|| cmp_program(p1, p2))
            .then_with(|| cmp_program(q1, q2)),
        (Program::While(b1, p1), Program::While(b2, p2)) => cmp_bool(b1, b2).then_with(|| cmp_program(p1, p2)),
        _ => unreachable!(),
    })
}
