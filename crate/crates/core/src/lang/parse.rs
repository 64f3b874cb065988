//! Lexer and recursive-descent parser for the concrete syntax.
//!
//! Parentheses are mandatory exactly where the grammar puts them, so every
//! accepted text has a unique tree. `¬ ∨ ∧` may also be written `! || &&`.

use num_bigint::BigUint;
use thiserror::Error;

use super::ast::{Arith, Bool, Numeral, Program, Register};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Skip,
    If,
    Then,
    Else,
    While,
    Do,
    True,
    False,
    X,
    Num(BigUint),
    Assign,
    Semi,
    Eq,
    Lt,
    Not,
    Or,
    And,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("numeral {n}"),
            Tok::Eof => "end of input".into(),
            other => format!("{other:?}").to_lowercase(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let c = src[i..].chars().next().unwrap();
        let start = i;
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let text = &src[start..i];
            if text.len() > 1 && text.starts_with('0') {
                return Err(ParseError::new(start, format!("numeral `{text}` has a leading zero")));
            }
            out.push((Tok::Num(text.parse().unwrap()), start));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            let tok = match &src[start..i] {
                "skip" => Tok::Skip,
                "if" => Tok::If,
                "then" => Tok::Then,
                "else" => Tok::Else,
                "while" => Tok::While,
                "do" => Tok::Do,
                "true" => Tok::True,
                "false" => Tok::False,
                "x" => Tok::X,
                w => return Err(ParseError::new(start, format!("unknown word `{w}`"))),
            };
            out.push((tok, start));
            continue;
        }
        let rest = &src[i..];
        let (tok, width) = if rest.starts_with(":=") {
            (Tok::Assign, 2)
        } else if rest.starts_with("||") {
            (Tok::Or, 2)
        } else if rest.starts_with("&&") {
            (Tok::And, 2)
        } else {
            let t = match c {
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                '<' => Tok::Lt,
                '¬' | '!' => Tok::Not,
                '∨' => Tok::Or,
                '∧' => Tok::And,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                _ => return Err(ParseError::new(start, format!("unexpected character `{c}`"))),
            };
            (t, c.len_utf8())
        };
        out.push((tok, start));
        i += width;
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(self.offset(), format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn numeral(&mut self) -> Result<Numeral, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Numeral(n))
            }
            _ => Err(self.unexpected("numeral")),
        }
    }

    fn register(&mut self) -> Result<Register, ParseError> {
        self.expect(Tok::X, "`x`")?;
        self.expect(Tok::LBracket, "`[`")?;
        let n = self.numeral()?;
        self.expect(Tok::RBracket, "`]`")?;
        Ok(Register(n))
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        match self.peek() {
            Tok::Skip => {
                self.bump();
                Ok(Program::Skip)
            }
            Tok::X => {
                let x = self.register()?;
                self.expect(Tok::Assign, "`:=`")?;
                let a = self.arith()?;
                Ok(Program::Assign(x, a))
            }
            Tok::LParen => {
                self.bump();
                let p = match self.peek() {
                    Tok::If => {
                        self.bump();
                        let b = self.boolean()?;
                        self.expect(Tok::Then, "`then`")?;
                        let p = self.program()?;
                        self.expect(Tok::Else, "`else`")?;
                        let q = self.program()?;
                        Program::if_(b, p, q)
                    }
                    Tok::While => {
                        self.bump();
                        let b = self.boolean()?;
                        self.expect(Tok::Do, "`do`")?;
                        let p = self.program()?;
                        Program::while_(b, p)
                    }
                    _ => {
                        let p = self.program()?;
                        self.expect(Tok::Semi, "`;`")?;
                        let q = self.program()?;
                        Program::seq(p, q)
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(p)
            }
            _ => Err(self.unexpected("program")),
        }
    }

    fn arith(&mut self) -> Result<Arith, ParseError> {
        match self.peek() {
            Tok::Num(_) => Ok(Arith::Num(self.numeral()?)),
            Tok::X => Ok(Arith::Reg(self.register()?)),
            Tok::LParen => {
                self.bump();
                let a = self.arith()?;
                let make: fn(Arith, Arith) -> Arith = match self.peek() {
                    Tok::Plus => Arith::add,
                    Tok::Minus => Arith::sub,
                    Tok::Star => Arith::mul,
                    _ => return Err(self.unexpected("`+`, `-` or `*`")),
                };
                self.bump();
                let e = make(a, self.arith()?);
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.unexpected("arithmetic expression")),
        }
    }

    fn boolean(&mut self) -> Result<Bool, ParseError> {
        match self.peek() {
            Tok::True => {
                self.bump();
                Ok(Bool::True)
            }
            Tok::False => {
                self.bump();
                Ok(Bool::False)
            }
            Tok::Not => {
                self.bump();
                Ok(Bool::not(self.boolean()?))
            }
            Tok::LParen => {
                // `(` opens either a comparison of arithmetic expressions or a
                // boolean connective; try the comparison first and backtrack.
                let save = self.pos;
                if self.starts_arith(1) {
                    match self.comparison() {
                        Ok(b) => return Ok(b),
                        Err(cmp_err) => {
                            self.pos = save;
                            return match self.connective() {
                                Ok(b) => Ok(b),
                                Err(conn_err) => Err(furthest(cmp_err, conn_err)),
                            };
                        }
                    }
                }
                self.connective()
            }
            _ => Err(self.unexpected("boolean expression")),
        }
    }

    fn starts_arith(&self, ahead: usize) -> bool {
        matches!(self.peek_at(ahead), Tok::Num(_) | Tok::X | Tok::LParen)
    }

    fn comparison(&mut self) -> Result<Bool, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let a = self.arith()?;
        let make: fn(Arith, Arith) -> Bool = match self.peek() {
            Tok::Eq => Bool::eq,
            Tok::Lt => Bool::lt,
            _ => return Err(self.unexpected("`=` or `<`")),
        };
        self.bump();
        let e = make(a, self.arith()?);
        self.expect(Tok::RParen, "`)`")?;
        Ok(e)
    }

    fn connective(&mut self) -> Result<Bool, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let a = self.boolean()?;
        let make: fn(Bool, Bool) -> Bool = match self.peek() {
            Tok::Or => Bool::or,
            Tok::And => Bool::and,
            _ => return Err(self.unexpected("`∨` or `∧`")),
        };
        self.bump();
        let e = make(a, self.boolean()?);
        self.expect(Tok::RParen, "`)`")?;
        Ok(e)
    }

    fn finish<T>(&mut self, value: T) -> Result<T, ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(value)
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

fn furthest(a: ParseError, b: ParseError) -> ParseError {
    if b.offset >= a.offset {
        b
    } else {
        a
    }
}

/// Parses a complete program text.
pub fn parse(text: &str) -> Result<Program, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let prog = p.program()?;
    p.finish(prog)
}

pub fn parse_arith(text: &str) -> Result<Arith, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let a = p.arith()?;
    p.finish(a)
}

pub fn parse_bool(text: &str) -> Result<Bool, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let b = p.boolean()?;
    p.finish(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skip() {
        assert_eq!(parse("skip").unwrap(), Program::Skip);
        assert_eq!(parse("  skip\n").unwrap(), Program::Skip);
    }

    #[test]
    fn worked_example() {
        let p = parse("(x[0] := 2; (x[1] := 1; x[2] := 3))").unwrap();
        let want = Program::seq(
            Program::assign(Register::new(0u32), Arith::num(2)),
            Program::seq(
                Program::assign(Register::new(1u32), Arith::num(1)),
                Program::assign(Register::new(2u32), Arith::num(3)),
            ),
        );
        assert_eq!(p, want);
    }

    #[test]
    fn leading_zero_rejected() {
        let e = parse("x[01] := 0").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse("x[0] := 007").is_err());
        assert!(parse("x[10] := 0").is_ok());
    }

    #[test]
    fn parentheses_are_mandatory() {
        assert!(parse("skip; skip").is_err());
        assert!(parse("((skip; skip))").is_err());
        assert!(parse("x[0] := x[1] + 1").is_err());
        assert!(parse("while true do skip").is_err());
        assert!(parse("(while (true) do skip)").is_err());
        assert!(parse("(while ¬(true) do skip)").is_err());
    }

    #[test]
    fn boolean_backtracking() {
        let b = parse_bool("(((x[0] + 1) < 2) ∧ ¬(x[1] = x[2]))").unwrap();
        assert_eq!(b.to_string(), "(((x[0] + 1) < 2) ∧ ¬(x[1] = x[2]))");
        let b = parse_bool("((true ∨ false) ∧ true)").unwrap();
        assert_eq!(b.len(), 5);
    }

    #[test]
    fn ascii_aliases() {
        let a = parse("(while !(true || false) do skip)").unwrap();
        let b = parse("(while ¬(true ∨ false) do skip)").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_bool("(true && false)").unwrap(), Bool::and(Bool::True, Bool::False));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse("(skip; skip").unwrap_err();
        assert_eq!(e.offset, 11);
        let e = parse("(skip ; y)").unwrap_err();
        assert_eq!(e.offset, 8);
        assert!(parse("").is_err());
        assert!(parse("skip skip").is_err());
    }

    #[test]
    fn huge_register_index() {
        let p = parse("x[123456789012345678901234567890] := 1").unwrap();
        assert_eq!(p.len(), 1 + 31 + 1);
    }
}
