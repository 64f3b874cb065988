//! Step-budgeted execution of IMP programs.
//!
//! The machine follows the usual structural operational semantics and charges
//! for every transition:
//!
//! * assignment commit, guard resolution of `if`/`while`, and elimination of
//!   a finished `skip` in a sequence (including the sequence a true `while`
//!   guard unrolls into) each cost [`CostModel::statement`];
//! * every operator node (`+ - * = < ¬ ∨ ∧`) evaluated inside an expression
//!   costs [`CostModel::operator`].
//!
//! A bare `skip` is terminal and costs nothing. Subtraction is truncated at
//! zero and boolean connectives evaluate both operands.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::lang::{append_nat_bits, Arith, Bitstring, Bool, Program};

/// Per-transition charges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    pub statement: u64,
    pub operator: u64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel { statement: 1, operator: 1 }
    }
}

/// Largest register value the machine will build, in bits. Runs that would
/// exceed it stop as non-halting with [`Stop::ValueLimit`].
pub const DEFAULT_MAX_VALUE_BITS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VmConfig {
    pub budget: u64,
    pub cost: CostModel,
    pub max_value_bits: u64,
}

impl VmConfig {
    pub fn with_budget(budget: u64) -> Self {
        VmConfig { budget, cost: CostModel::default(), max_value_bits: DEFAULT_MAX_VALUE_BITS }
    }
}

/// Sparse register file. Absent registers hold zero; zero is never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Store(BTreeMap<BigUint, BigUint>);

impl Store {
    pub fn new() -> Self {
        Store(BTreeMap::new())
    }

    pub fn get(&self, reg: &BigUint) -> BigUint {
        self.0.get(reg).cloned().unwrap_or_default()
    }

    /// Nonzero value of a register, if any.
    pub fn value(&self, reg: u64) -> Option<&BigUint> {
        self.0.get(&BigUint::from(reg))
    }

    pub fn set(&mut self, reg: BigUint, value: BigUint) {
        if value.is_zero() {
            self.0.remove(&reg);
        } else {
            self.0.insert(reg, value);
        }
    }

    /// Nonzero registers in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, &BigUint)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation of each register's canonical string, lowest index first.
    pub fn output(&self) -> Bitstring {
        output(self)
    }
}

impl<const N: usize> From<[(u64, u64); N]> for Store {
    fn from(entries: [(u64, u64); N]) -> Self {
        let mut s = Store::new();
        for (r, v) in entries {
            s.set(BigUint::from(r), BigUint::from(v));
        }
        s
    }
}

/// Output bitstring of a final store.
pub fn output(store: &Store) -> Bitstring {
    let mut out = Bitstring::empty();
    for (_, v) in store.iter() {
        append_nat_bits(v, &mut out);
    }
    out
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stop {
    Halted,
    BudgetExhausted,
    ValueLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub halted: bool,
    /// Steps consumed; equals the budget when the run did not halt.
    pub steps: u64,
    pub store: Store,
    pub stop: Stop,
}

impl RunResult {
    pub fn output(&self) -> Bitstring {
        output(&self.store)
    }
}

struct Abort;

struct Machine<'a> {
    cfg: &'a VmConfig,
    store: Store,
    spent: u64,
    stop: Stop,
}

impl<'a> Machine<'a> {
    fn charge(&mut self, amount: u64) -> Result<(), Abort> {
        match self.spent.checked_add(amount) {
            Some(total) if total <= self.cfg.budget => {
                self.spent = total;
                Ok(())
            }
            _ => {
                self.stop = Stop::BudgetExhausted;
                Err(Abort)
            }
        }
    }

    fn check_bits(&mut self, bits: u64) -> Result<(), Abort> {
        if bits > self.cfg.max_value_bits {
            self.stop = Stop::ValueLimit;
            Err(Abort)
        } else {
            Ok(())
        }
    }

    fn arith(&mut self, a: &Arith) -> Result<BigUint, Abort> {
        Ok(match a {
            Arith::Num(n) => n.value().clone(),
            Arith::Reg(r) => self.store.get(r.index()),
            Arith::Add(x, y) => {
                let (x, y) = (self.arith(x)?, self.arith(y)?);
                self.charge(self.cfg.cost.operator)?;
                let v = x + y;
                self.check_bits(v.bits())?;
                v
            }
            Arith::Sub(x, y) => {
                let (x, y) = (self.arith(x)?, self.arith(y)?);
                self.charge(self.cfg.cost.operator)?;
                if x > y {
                    x - y
                } else {
                    BigUint::zero()
                }
            }
            Arith::Mul(x, y) => {
                let (x, y) = (self.arith(x)?, self.arith(y)?);
                self.charge(self.cfg.cost.operator)?;
                if x.is_zero() || y.is_zero() {
                    BigUint::zero()
                } else {
                    self.check_bits(x.bits() + y.bits() - 1)?;
                    x * y
                }
            }
        })
    }

    fn boolean(&mut self, b: &Bool) -> Result<bool, Abort> {
        Ok(match b {
            Bool::True => true,
            Bool::False => false,
            Bool::Eq(x, y) => {
                let r = self.arith(x)? == self.arith(y)?;
                self.charge(self.cfg.cost.operator)?;
                r
            }
            Bool::Lt(x, y) => {
                let r = self.arith(x)? < self.arith(y)?;
                self.charge(self.cfg.cost.operator)?;
                r
            }
            Bool::Not(x) => {
                let r = !self.boolean(x)?;
                self.charge(self.cfg.cost.operator)?;
                r
            }
            Bool::Or(x, y) => {
                let (x, y) = (self.boolean(x)?, self.boolean(y)?);
                self.charge(self.cfg.cost.operator)?;
                x || y
            }
            Bool::And(x, y) => {
                let (x, y) = (self.boolean(x)?, self.boolean(y)?);
                self.charge(self.cfg.cost.operator)?;
                x && y
            }
        })
    }

    /// Executes one statement frame, pushing its continuation.
    fn step(&mut self, p: &'a Program, stack: &mut Vec<&'a Program>) -> Result<(), Abort> {
        match p {
            Program::Skip => {}
            Program::Assign(x, a) => {
                let v = self.arith(a)?;
                self.charge(self.cfg.cost.statement)?;
                self.store.set(x.index().clone(), v);
            }
            Program::Seq(first, second) => {
                // The skip-elimination step of this sequence is paid up front;
                // only the total matters for the halting verdict.
                self.charge(self.cfg.cost.statement)?;
                stack.push(second);
                stack.push(first);
            }
            Program::If(b, then, otherwise) => {
                let c = self.boolean(b)?;
                self.charge(self.cfg.cost.statement)?;
                stack.push(if c { then } else { otherwise });
            }
            Program::While(b, body) => {
                let c = self.boolean(b)?;
                self.charge(self.cfg.cost.statement)?;
                if c {
                    // while b do c  →  (c; while b do c)
                    self.charge(self.cfg.cost.statement)?;
                    stack.push(p);
                    stack.push(body);
                }
            }
        }
        Ok(())
    }
}

/// Runs `p` from the all-zero store under `cfg`.
pub fn run_with(p: &Program, cfg: &VmConfig) -> RunResult {
    let mut m = Machine { cfg, store: Store::new(), spent: 0, stop: Stop::Halted };
    let mut stack = vec![p];
    let mut aborted = false;
    while let Some(top) = stack.pop() {
        if m.step(top, &mut stack).is_err() {
            aborted = true;
            break;
        }
    }
    if aborted {
        RunResult { halted: false, steps: cfg.budget, store: m.store, stop: m.stop }
    } else {
        RunResult { halted: true, steps: m.spent, store: m.store, stop: Stop::Halted }
    }
}

/// Runs `p` with the default cost model and the given step budget.
pub fn run(p: &Program, budget: u64) -> RunResult {
    run_with(p, &VmConfig::with_budget(budget))
}

/// Same verdict, step count and output as [`run_with`], but stops a run as
/// soon as a whole configuration (pending statements, store) repeats, since
/// such a run can only end by exhausting the budget. On that path the
/// returned store is the one at the repeat.
pub fn run_with_cycle_check(p: &Program, cfg: &VmConfig) -> RunResult {
    let mut m = Machine { cfg, store: Store::new(), spent: 0, stop: Stop::Halted };
    let mut stack = vec![p];
    // Brent's scheme: compare against a snapshot refreshed at powers of two.
    let mut snapshot: Option<(Vec<*const Program>, Store)> = None;
    let (mut power, mut lam) = (1u64, 0u64);
    while let Some(top) = stack.pop() {
        if let Some((ptrs, store)) = &snapshot {
            if ptrs.len() == stack.len() + 1
                && *store == m.store
                && ptrs[..stack.len()].iter().zip(&stack).all(|(a, b)| std::ptr::eq(*a, *b))
                && std::ptr::eq(ptrs[stack.len()], top)
            {
                return RunResult { halted: false, steps: cfg.budget, store: m.store, stop: Stop::BudgetExhausted };
            }
        }
        if lam == power {
            let mut ptrs: Vec<*const Program> = stack.iter().map(|q| *q as *const Program).collect();
            ptrs.push(top);
            snapshot = Some((ptrs, m.store.clone()));
            power *= 2;
            lam = 0;
        }
        lam += 1;
        if m.step(top, &mut stack).is_err() {
            return RunResult { halted: false, steps: cfg.budget, store: m.store, stop: m.stop };
        }
    }
    RunResult { halted: true, steps: m.spent, store: m.store, stop: Stop::Halted }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Divergence {
    Halts,
    Diverges,
    Unknown,
}

/// Exact halting verdict by cycle detection over whole configurations.
///
/// Every configuration (pending statements, store) is remembered; revisiting
/// one proves the run loops forever. Gives up with `Unknown` once more than
/// `state_cap` configurations have been seen.
pub fn detect_divergence(p: &Program, state_cap: usize) -> Divergence {
    let cfg = VmConfig { budget: u64::MAX, ..VmConfig::with_budget(0) };
    let mut m = Machine { cfg: &cfg, store: Store::new(), spent: 0, stop: Stop::Halted };
    let mut stack = vec![p];
    let mut seen: HashSet<(Vec<*const Program>, Store)> = HashSet::new();
    loop {
        let key: Vec<*const Program> = stack.iter().map(|q| *q as *const Program).collect();
        if !seen.insert((key, m.store.clone())) {
            return Divergence::Diverges;
        }
        if seen.len() > state_cap {
            return Divergence::Unknown;
        }
        let Some(top) = stack.pop() else {
            return Divergence::Halts;
        };
        if m.step(top, &mut stack).is_err() {
            return Divergence::Unknown;
        }
    }
}
