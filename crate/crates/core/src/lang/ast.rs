//! Abstract syntax of IMP programs.
//!
//! Five syntactic categories: programs, arithmetic expressions, boolean
//! expressions, registers and numerals. Every node knows its length under the
//! node-count metric, where a numeral with `d` decimal digits counts as `d`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// A natural number literal. Rendered in decimal without leading zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Numeral(pub BigUint);

impl Numeral {
    pub fn new(value: impl Into<BigUint>) -> Self {
        Numeral(value.into())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// Number of decimal digits; `0` has one digit.
    pub fn digits(&self) -> u32 {
        decimal_digits(&self.0)
    }
}

impl From<u64> for Numeral {
    fn from(v: u64) -> Self {
        Numeral(BigUint::from(v))
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn decimal_digits(n: &BigUint) -> u32 {
    if let Some(mut v) = n.to_u64() {
        let mut d = 1;
        while v >= 10 {
            v /= 10;
            d += 1;
        }
        return d;
    }
    // log10 estimate from the bit length, corrected against an exact power.
    let est = ((n.bits() - 1) as f64 * std::f64::consts::LOG10_2) as u32;
    let mut d = est.max(1);
    while BigUint::from(10u32).pow(d) <= *n {
        d += 1;
    }
    while d > 1 && BigUint::from(10u32).pow(d - 1) > *n {
        d -= 1;
    }
    d
}

/// A register reference `x[N]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Register(pub Numeral);

impl Register {
    pub fn new(index: impl Into<BigUint>) -> Self {
        Register(Numeral(index.into()))
    }

    pub fn index(&self) -> &BigUint {
        &self.0 .0
    }

    pub fn len(&self) -> u32 {
        1 + self.0.digits()
    }
}

impl fmt::Display for Register {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{}]", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arith {
    Num(Numeral),
    Reg(Register),
    Add(Box<Arith>, Box<Arith>),
    Sub(Box<Arith>, Box<Arith>),
    Mul(Box<Arith>, Box<Arith>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bool {
    True,
    False,
    Eq(Box<Arith>, Box<Arith>),
    Lt(Box<Arith>, Box<Arith>),
    Not(Box<Bool>),
    Or(Box<Bool>, Box<Bool>),
    And(Box<Bool>, Box<Bool>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Program {
    Skip,
    Assign(Register, Arith),
    Seq(Box<Program>, Box<Program>),
    If(Bool, Box<Program>, Box<Program>),
    While(Bool, Box<Program>),
}

impl Arith {
    pub fn num(v: u64) -> Self {
        Arith::Num(Numeral::from(v))
    }

    pub fn reg(i: u64) -> Self {
        Arith::Reg(Register::new(i))
    }

    pub fn add(a: Arith, b: Arith) -> Self {
        Arith::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Arith, b: Arith) -> Self {
        Arith::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Arith, b: Arith) -> Self {
        Arith::Mul(Box::new(a), Box::new(b))
    }

    pub fn len(&self) -> u32 {
        match self {
            Arith::Num(n) => n.digits(),
            Arith::Reg(r) => r.len(),
            Arith::Add(a, b) | Arith::Sub(a, b) | Arith::Mul(a, b) => 1 + a.len() + b.len(),
        }
    }
}

impl Bool {
    pub fn eq(a: Arith, b: Arith) -> Self {
        Bool::Eq(Box::new(a), Box::new(b))
    }

    pub fn lt(a: Arith, b: Arith) -> Self {
        Bool::Lt(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(b: Bool) -> Self {
        Bool::Not(Box::new(b))
    }

    pub fn or(a: Bool, b: Bool) -> Self {
        Bool::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Bool, b: Bool) -> Self {
        Bool::And(Box::new(a), Box::new(b))
    }

    pub fn len(&self) -> u32 {
        match self {
            Bool::True | Bool::False => 1,
            Bool::Eq(a, b) | Bool::Lt(a, b) => 1 + a.len() + b.len(),
            Bool::Not(b) => 1 + b.len(),
            Bool::Or(a, b) | Bool::And(a, b) => 1 + a.len() + b.len(),
        }
    }
}

impl Program {
    pub fn assign(target: Register, rhs: Arith) -> Self {
        Program::Assign(target, rhs)
    }

    pub fn seq(first: Program, second: Program) -> Self {
        Program::Seq(Box::new(first), Box::new(second))
    }

    pub fn if_(cond: Bool, then: Program, otherwise: Program) -> Self {
        Program::If(cond, Box::new(then), Box::new(otherwise))
    }

    pub fn while_(cond: Bool, body: Program) -> Self {
        Program::While(cond, Box::new(body))
    }

    /// Node-count length of the syntax tree.
    pub fn len(&self) -> u32 {
        match self {
            Program::Skip => 1,
            Program::Assign(x, a) => 1 + x.len() + a.len(),
            Program::Seq(p, q) => 1 + p.len() + q.len(),
            Program::If(b, p, q) => 1 + b.len() + p.len() + q.len(),
            Program::While(b, p) => 1 + b.len() + p.len(),
        }
    }

    /// Direct subprograms (children of category P).
    pub fn children(&self) -> Vec<&Program> {
        match self {
            Program::Skip | Program::Assign(..) => vec![],
            Program::Seq(p, q) | Program::If(_, p, q) => vec![p, q],
            Program::While(_, p) => vec![p],
        }
    }

    /// All proper subprograms, preorder.
    pub fn subprograms(&self) -> Vec<&Program> {
        let mut out = Vec::new();
        let mut stack = self.children();
        stack.reverse();
        while let Some(p) = stack.pop() {
            out.push(p);
            let mut cs = p.children();
            cs.reverse();
            stack.extend(cs);
        }
        out
    }
}

impl fmt::Display for Arith {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arith::Num(n) => write!(f, "{n}"),
            Arith::Reg(r) => write!(f, "{r}"),
            Arith::Add(a, b) => write!(f, "({a} + {b})"),
            Arith::Sub(a, b) => write!(f, "({a} - {b})"),
            Arith::Mul(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

impl fmt::Display for Bool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bool::True => f.write_str("true"),
            Bool::False => f.write_str("false"),
            Bool::Eq(a, b) => write!(f, "({a} = {b})"),
            Bool::Lt(a, b) => write!(f, "({a} < {b})"),
            Bool::Not(b) => write!(f, "¬{b}"),
            Bool::Or(a, b) => write!(f, "({a} ∨ {b})"),
            Bool::And(a, b) => write!(f, "({a} ∧ {b})"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Program::Skip => f.write_str("skip"),
            Program::Assign(x, a) => write!(f, "{x} := {a}"),
            Program::Seq(p, q) => write!(f, "({p}; {q})"),
            Program::If(b, p, q) => write!(f, "(if {b} then {p} else {q})"),
            Program::While(b, p) => write!(f, "(while {b} do {p})"),
        }
    }
}

/// Canonical concrete syntax of a program.
pub fn render(p: &Program) -> String {
    p.to_string()
}

/// Node-count length metric.
pub fn program_length(p: &Program) -> u32 {
    p.len()
}
