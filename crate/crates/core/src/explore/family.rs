use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::lang::{Arith, Bool, Numeral, Program, Register};

/// Counter-loop programs whose output grows quickly with the parameter `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `2^n`
    Pows2,
    /// `n!`
    Fact,
    /// `n^n`
    Expt,
    /// `n^(2^n)`
    ExptPows2,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Pows2, Family::Fact, Family::Expt, Family::ExptPows2];

    pub fn name(self) -> &'static str {
        match self {
            Family::Pows2 => "pows2",
            Family::Fact => "fact",
            Family::Expt => "expt",
            Family::ExptPows2 => "expt-pows2",
        }
    }

    /// Value left in `x[0]`.
    pub fn value(self, n: u32) -> BigUint {
        let big = BigUint::from(n);
        match self {
            Family::Pows2 => BigUint::from(2u32).pow(n),
            Family::Fact => (1..=n).map(BigUint::from).product(),
            Family::Expt => big.pow(n),
            Family::ExptPows2 => {
                let mut v = big;
                for _ in 0..n {
                    v = &v * &v;
                }
                v
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}` (expected pows2, fact, expt or expt-pows2)"))
    }
}

/// `(x[0] := init; (while (x[1] < n) do (x[1] := (x[1] + 1); x[0] := (x[0] * rhs))))`
pub fn family_program(family: Family, n: u64) -> Program {
    let x0 = || Arith::Reg(Register::new(0u32));
    let x1 = || Arith::Reg(Register::new(1u32));
    let num = |v: u64| Arith::Num(Numeral::from(v));
    let (init, rhs) = match family {
        Family::Pows2 => (num(1), num(2)),
        Family::Fact => (num(1), x1()),
        Family::Expt => (num(1), num(n)),
        Family::ExptPows2 => (num(n), x0()),
    };
    let body = Program::seq(
        Program::assign(Register::new(1u32), Arith::add(x1(), num(1))),
        Program::assign(Register::new(0u32), Arith::mul(x0(), rhs)),
    );
    Program::seq(
        Program::assign(Register::new(0u32), init),
        Program::while_(Bool::lt(x1(), num(n)), body),
    )
}
