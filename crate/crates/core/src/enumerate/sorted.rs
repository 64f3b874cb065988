//! Fixed-length and canonical (length, then lexicographic) enumerations.
//!
//! Within one length, alternatives are ordered as the grammar lists them
//! (`skip`, assignment, sequence, `if`, `while`; numeral, register, `+ - *`;
//! `true`, `false`, `= <`, `¬`, `∨ ∧`). Trees built by the same production are
//! ordered by their children left to right, each child compared by its own
//! canonical position (length first). Numerals of one length sort by value.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::counts::CountTable;
use super::EnumError;
use crate::lang::{decimal_digits, Arith, Bool, Numeral, Program, Register};

/// Removes whole blocks from `idx` until it falls inside one; returns the
/// block's key. Blocks are visited in the order produced by `blocks`.
fn pick_block(idx: &mut BigUint, blocks: impl Iterator<Item = (u32, BigUint)>) -> u32 {
    for (key, size) in blocks {
        if *idx < size {
            return key;
        }
        *idx -= size;
    }
    unreachable!("index exceeds the block total")
}

/// Takes `idx` out of the alternative of size `size`; true if it lies inside.
fn take(idx: &mut BigUint, size: &BigUint) -> bool {
    if *idx < *size {
        true
    } else {
        *idx -= size;
        false
    }
}

fn ten_pow(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

impl CountTable {
    fn numeral_at(&self, digits: u32, idx: BigUint) -> Numeral {
        if digits <= 1 {
            Numeral(idx)
        } else {
            Numeral(ten_pow(digits - 1) + idx)
        }
    }

    fn numeral_index(&self, n: &Numeral) -> (u32, BigUint) {
        let d = decimal_digits(n.value());
        if d <= 1 {
            (d, n.value().clone())
        } else {
            (d, n.value() - ten_pow(d - 1))
        }
    }

    /// Pair of trees from categories `u`,`v` whose lengths sum to `s`.
    fn split_pair(&self, u: &[BigUint], v: &[BigUint], s: u32, mut idx: BigUint) -> (u32, BigUint, u32, BigUint) {
        let s = s as usize;
        let l1 = pick_block(&mut idx, (0..=s).map(|i| (i as u32, &u[i] * &v[s - i])));
        let l2 = s - l1 as usize;
        let (q, r) = idx.div_rem(&v[l2]);
        (l1, q, l2 as u32, r)
    }

    fn join_pair(&self, u: &[BigUint], v: &[BigUint], (l1, i1): (u32, BigUint), (l2, i2): (u32, BigUint)) -> BigUint {
        let s = (l1 + l2) as usize;
        let mut offset = BigUint::zero();
        for i in 0..l1 as usize {
            offset += &u[i] * &v[s - i];
        }
        offset + i1 * &v[l2 as usize] + i2
    }

    pub(crate) fn unrank_register(&self, len: u32, idx: BigUint) -> Register {
        Register(self.numeral_at(len - 1, idx))
    }

    pub(crate) fn unrank_arith(&self, len: u32, mut idx: BigUint) -> Arith {
        let l = len as usize;
        if take(&mut idx, &self.n[l]) {
            return Arith::Num(self.numeral_at(len, idx));
        }
        if take(&mut idx, &self.x[l]) {
            return Arith::Reg(self.unrank_register(len, idx));
        }
        let pairs = &self.aa[l - 1];
        let ctor: fn(Arith, Arith) -> Arith = if take(&mut idx, pairs) {
            Arith::add
        } else if take(&mut idx, pairs) {
            Arith::sub
        } else {
            assert!(idx < *pairs, "arith index out of range");
            Arith::mul
        };
        let (l1, i1, l2, i2) = self.split_pair(&self.a, &self.a, len - 1, idx);
        ctor(self.unrank_arith(l1, i1), self.unrank_arith(l2, i2))
    }

    pub(crate) fn unrank_bool(&self, len: u32, mut idx: BigUint) -> Bool {
        let l = len as usize;
        if len == 1 {
            return if idx.is_zero() { Bool::True } else { assert!(idx.is_one()); Bool::False };
        }
        let cmp = &self.aa[l - 1];
        for ctor in [Bool::eq as fn(Arith, Arith) -> Bool, Bool::lt] {
            if take(&mut idx, cmp) {
                let (l1, i1, l2, i2) = self.split_pair(&self.a, &self.a, len - 1, idx);
                return ctor(self.unrank_arith(l1, i1), self.unrank_arith(l2, i2));
            }
        }
        if take(&mut idx, &self.b[l - 1]) {
            return Bool::not(self.unrank_bool(len - 1, idx));
        }
        let conn = &self.bb[l - 1];
        let ctor: fn(Bool, Bool) -> Bool = if take(&mut idx, conn) {
            Bool::or
        } else {
            assert!(idx < *conn, "bool index out of range");
            Bool::and
        };
        let (l1, i1, l2, i2) = self.split_pair(&self.b, &self.b, len - 1, idx);
        ctor(self.unrank_bool(l1, i1), self.unrank_bool(l2, i2))
    }

    pub(crate) fn unrank_program(&self, len: u32, mut idx: BigUint) -> Program {
        if len == 1 {
            assert!(idx.is_zero(), "program index out of range");
            return Program::Skip;
        }
        let l = len as usize;
        let s = len - 1;
        if take(&mut idx, &self.xa[l - 1]) {
            let (lx, ix, la, ia) = self.split_pair(&self.x, &self.a, s, idx);
            return Program::Assign(self.unrank_register(lx, ix), self.unrank_arith(la, ia));
        }
        if take(&mut idx, &self.pp[l - 1]) {
            let (l1, i1, l2, i2) = self.split_pair(&self.p, &self.p, s, idx);
            return Program::seq(self.unrank_program(l1, i1), self.unrank_program(l2, i2));
        }
        if take(&mut idx, &self.bpp[l - 1]) {
            let (lb, ib, lr, ir) = self.split_pair(&self.b, &self.pp, s, idx);
            let (l1, i1, l2, i2) = self.split_pair(&self.p, &self.p, lr, ir);
            return Program::if_(
                self.unrank_bool(lb, ib),
                self.unrank_program(l1, i1),
                self.unrank_program(l2, i2),
            );
        }
        assert!(idx < self.bp[l - 1], "program index out of range");
        let (lb, ib, lp, ip) = self.split_pair(&self.b, &self.p, s, idx);
        Program::while_(self.unrank_bool(lb, ib), self.unrank_program(lp, ip))
    }

    pub(crate) fn rank_register(&self, x: &Register) -> (u32, BigUint) {
        let (d, i) = self.numeral_index(&x.0);
        (d + 1, i)
    }

    pub(crate) fn rank_arith(&self, a: &Arith) -> (u32, BigUint) {
        match a {
            Arith::Num(n) => self.numeral_index(n),
            Arith::Reg(x) => {
                let (l, i) = self.rank_register(x);
                (l, &self.n[l as usize] + i)
            }
            Arith::Add(u, v) | Arith::Sub(u, v) | Arith::Mul(u, v) => {
                let (lu, iu) = self.rank_arith(u);
                let (lv, iv) = self.rank_arith(v);
                let l = 1 + lu + lv;
                let slot = match a {
                    Arith::Add(..) => 0u32,
                    Arith::Sub(..) => 1,
                    _ => 2,
                };
                let base = &self.n[l as usize] + &self.x[l as usize] + &self.aa[l as usize - 1] * slot;
                (l, base + self.join_pair(&self.a, &self.a, (lu, iu), (lv, iv)))
            }
        }
    }

    pub(crate) fn rank_bool(&self, b: &Bool) -> (u32, BigUint) {
        match b {
            Bool::True => (1, BigUint::zero()),
            Bool::False => (1, BigUint::one()),
            Bool::Eq(u, v) | Bool::Lt(u, v) => {
                let (lu, iu) = self.rank_arith(u);
                let (lv, iv) = self.rank_arith(v);
                let l = 1 + lu + lv;
                let slot = u32::from(matches!(b, Bool::Lt(..)));
                let base = &self.aa[l as usize - 1] * slot;
                (l, base + self.join_pair(&self.a, &self.a, (lu, iu), (lv, iv)))
            }
            Bool::Not(u) => {
                let (lu, iu) = self.rank_bool(u);
                let l = lu + 1;
                (l, &self.aa[l as usize - 1] * 2u32 + iu)
            }
            Bool::Or(u, v) | Bool::And(u, v) => {
                let (lu, iu) = self.rank_bool(u);
                let (lv, iv) = self.rank_bool(v);
                let l = 1 + lu + lv;
                let s = l as usize - 1;
                let slot = u32::from(matches!(b, Bool::And(..)));
                let base = &self.aa[s] * 2u32 + &self.b[s] + &self.bb[s] * slot;
                (l, base + self.join_pair(&self.b, &self.b, (lu, iu), (lv, iv)))
            }
        }
    }

    pub(crate) fn rank_program(&self, p: &Program) -> (u32, BigUint) {
        match p {
            Program::Skip => (1, BigUint::zero()),
            Program::Assign(x, a) => {
                let (lx, ix) = self.rank_register(x);
                let (la, ia) = self.rank_arith(a);
                (1 + lx + la, self.join_pair(&self.x, &self.a, (lx, ix), (la, ia)))
            }
            Program::Seq(u, v) => {
                let (lu, iu) = self.rank_program(u);
                let (lv, iv) = self.rank_program(v);
                let s = (lu + lv) as usize;
                (1 + lu + lv, &self.xa[s] + self.join_pair(&self.p, &self.p, (lu, iu), (lv, iv)))
            }
            Program::If(c, u, v) => {
                let (lc, ic) = self.rank_bool(c);
                let (lu, iu) = self.rank_program(u);
                let (lv, iv) = self.rank_program(v);
                let inner = self.join_pair(&self.p, &self.p, (lu, iu), (lv, iv));
                let s = (lc + lu + lv) as usize;
                let base = &self.xa[s] + &self.pp[s];
                (1 + s as u32, base + self.join_pair(&self.b, &self.pp, (lc, ic), (lu + lv, inner)))
            }
            Program::While(c, u) => {
                let (lc, ic) = self.rank_bool(c);
                let (lu, iu) = self.rank_program(u);
                let s = (lc + lu) as usize;
                let base = &self.xa[s] + &self.pp[s] + &self.bpp[s];
                (1 + s as u32, base + self.join_pair(&self.b, &self.p, (lc, ic), (lu, iu)))
            }
        }
    }

    /// The `k`-th program of length `len`.
    pub fn unrank_fixed_length(&self, len: u32, k: &BigUint) -> Result<Program, EnumError> {
        if len > self.max_len() {
            return Err(EnumError::TableTooShort { len, max_len: self.max_len() });
        }
        let count = self.programs(len);
        if k >= count {
            return Err(EnumError::OutOfRange { len, index: k.clone(), count: count.clone() });
        }
        Ok(self.unrank_program(len, k.clone()))
    }

    /// Index of `p` within the programs of its own length.
    pub fn rank_fixed_length(&self, p: &Program) -> Result<(u32, BigUint), EnumError> {
        let len = p.len();
        if len > self.max_len() {
            return Err(EnumError::TableTooShort { len, max_len: self.max_len() });
        }
        Ok(self.rank_program(p))
    }

    /// Program at canonical position `k`.
    pub fn unrank_canonical(&self, k: &BigUint) -> Result<Program, EnumError> {
        let len = self
            .length_of_position(k)
            .ok_or_else(|| EnumError::PositionBeyondTable { max_len: self.max_len() })?;
        let before = if len == 0 { BigUint::zero() } else { self.cumulative(len - 1).clone() };
        Ok(self.unrank_program(len, k - before))
    }

    /// Canonical position of `p`.
    pub fn rank_canonical(&self, p: &Program) -> Result<BigUint, EnumError> {
        let (len, idx) = self.rank_fixed_length(p)?;
        Ok(self.cumulative(len - 1) + idx)
    }
}

/// The `k`-th program of length `len`, in lexicographic order.
pub fn unrank_fixed_length(len: u32, k: &BigUint) -> Result<Program, EnumError> {
    CountTable::new(len).unrank_fixed_length(len, k)
}

/// Program at canonical position `k`; total on all naturals.
pub fn unrank_canonical(k: &BigUint) -> Program {
    CountTable::covering(k).unrank_canonical(k).expect("covering table reaches k")
}

/// Inverse of [`unrank_canonical`].
pub fn rank_canonical(p: &Program) -> BigUint {
    CountTable::new(p.len()).rank_canonical(p).expect("table built for the program's length")
}
