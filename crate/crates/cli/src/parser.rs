//! Operator expressions: `z`, `z^-1`, `T = z∂z`, `d = ∂z`, rationals, with
//! explicit `*`, `+`, `-`, integer powers and parentheses.

use std::fmt;

use mellin_core::rational::parse_rational;
use mellin_core::{DiffOp, Presentation, Rational};
use num_traits::Signed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Z,
    ZInv,
    T,
    D,
    Num(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Atom(Atom),
    /// Leading unary minus of an expression.
    Neg(Box<OperatorExpr>),
    Add(Box<OperatorExpr>, Box<OperatorExpr>),
    Sub(Box<OperatorExpr>, Box<OperatorExpr>),
    Mul(Box<OperatorExpr>, Box<OperatorExpr>),
    Pow(Box<OperatorExpr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ElaborateError {
    #[error("negative power of `{0}`, which is not a unit")]
    NotInvertible(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Z,
    T,
    D,
    Num(Rational),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Z => "`z`".into(),
            Tok::T => "`T`".into(),
            Tok::D => "`d`".into(),
            Tok::Num(r) => format!("number `{r}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const ATOM_START: [&str; 6] = ["`z`", "`T`", "`d`", "number", "`(`", "`-`"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'z' => Tok::Z,
            b'T' => Tok::T,
            b'd' => Tok::D,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit = &text[start..i];
                let value = parse_rational(lit).ok_or_else(|| SyntaxError {
                    offset: start,
                    expected: vec!["nonzero denominator"],
                    found: format!("`{lit}`"),
                })?;
                out.push((start, Tok::Num(value)));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(SyntaxError {
                    offset: i,
                    expected: ATOM_START.to_vec(),
                    found: format!("`{ch}`"),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr, SyntaxError> {
        let mut lhs = if *self.peek() == Tok::Minus {
            self.bump();
            OperatorExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = OperatorExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = OperatorExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<OperatorExpr, SyntaxError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = OperatorExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<OperatorExpr, SyntaxError> {
        let bare_z = *self.peek() == Tok::Z;
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let exponent = match self.peek() {
            Tok::Num(r) if r.is_integer() => {
                let n: i64 = r.to_integer().try_into().map_err(|_| self.error(&["small integer exponent"]))?;
                self.bump();
                if negative {
                    -n
                } else {
                    n
                }
            }
            _ => return Err(self.error(if negative { &["integer"] } else { &["integer", "`-`"] })),
        };
        if bare_z && exponent == -1 {
            return Ok(OperatorExpr::Atom(Atom::ZInv));
        }
        Ok(OperatorExpr::Pow(Box::new(base), exponent))
    }

    fn atom(&mut self) -> Result<OperatorExpr, SyntaxError> {
        let atom = match self.peek().clone() {
            Tok::Z => Atom::Z,
            Tok::T => Atom::T,
            Tok::D => Atom::D,
            Tok::Num(r) => Atom::Num(r),
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`+`", "`-`", "`*`", "`^`"]));
                }
                self.bump();
                return Ok(inner);
            }
            _ => return Err(self.error(&["`z`", "`T`", "`d`", "number", "`(`"])),
        };
        self.bump();
        Ok(OperatorExpr::Atom(atom))
    }
}

pub fn parse(text: &str) -> Result<OperatorExpr, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::End {
        return Err(p.error(&ATOM_START));
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(e)
}

impl OperatorExpr {
    fn level(&self) -> u8 {
        match self {
            OperatorExpr::Add(..) | OperatorExpr::Sub(..) | OperatorExpr::Neg(_) => 1,
            OperatorExpr::Mul(..) => 2,
            OperatorExpr::Pow(..) | OperatorExpr::Atom(Atom::ZInv) => 3,
            OperatorExpr::Atom(Atom::Num(r)) if r.is_negative() => 1,
            OperatorExpr::Atom(_) => 4,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write(f, 1)?;
            return write!(f, ")");
        }
        match self {
            OperatorExpr::Atom(a) => match a {
                Atom::Z => write!(f, "z"),
                Atom::ZInv => write!(f, "z^-1"),
                Atom::T => write!(f, "T"),
                Atom::D => write!(f, "d"),
                Atom::Num(r) if r.is_negative() => write!(f, "-{}", -r),
                Atom::Num(r) => write!(f, "{r}"),
            },
            OperatorExpr::Neg(e) => {
                write!(f, "-")?;
                e.write(f, 2)
            }
            OperatorExpr::Add(a, b) => {
                a.write(f, 1)?;
                write!(f, " + ")?;
                b.write(f, 2)
            }
            OperatorExpr::Sub(a, b) => {
                a.write(f, 1)?;
                write!(f, " - ")?;
                b.write(f, 2)
            }
            OperatorExpr::Mul(a, b) => {
                a.write(f, 2)?;
                write!(f, "*")?;
                b.write(f, 3)
            }
            OperatorExpr::Pow(base, n) => {
                // `z^-1` would read back as the inverse atom
                if matches!(**base, OperatorExpr::Atom(Atom::Z)) && *n == -1 {
                    write!(f, "(z)^-1")
                } else {
                    base.write(f, 4)?;
                    write!(f, "^{n}")
                }
            }
        }
    }

    pub fn uses_d(&self) -> bool {
        match self {
            OperatorExpr::Atom(a) => *a == Atom::D,
            OperatorExpr::Neg(e) | OperatorExpr::Pow(e, _) => e.uses_d(),
            OperatorExpr::Add(a, b) | OperatorExpr::Sub(a, b) | OperatorExpr::Mul(a, b) => a.uses_d() || b.uses_d(),
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 1)
    }
}

fn invert_unit(op: &DiffOp, n: i64, shown: &OperatorExpr) -> Result<DiffOp, ElaborateError> {
    let mut terms = op.terms();
    match (terms.next(), terms.next()) {
        (Some(((r, 0), c)), None) => {
            let k = -n;
            let c = c.recip().pow(k as i32);
            Ok(DiffOp::monomial(op.presentation(), r * n, 0, c))
        }
        _ => Err(ElaborateError::NotInvertible(shown.to_string())),
    }
}

fn eval(e: &OperatorExpr, pres: Presentation) -> Result<DiffOp, ElaborateError> {
    Ok(match e {
        OperatorExpr::Atom(a) => match a {
            Atom::Z => DiffOp::z_pow(1).to_presentation(pres),
            Atom::ZInv => DiffOp::z_pow(-1).to_presentation(pres),
            Atom::T => DiffOp::theta().to_presentation(pres),
            Atom::D => DiffOp::d().to_presentation(pres),
            Atom::Num(r) => DiffOp::constant(r.clone()).to_presentation(pres),
        },
        OperatorExpr::Neg(a) => eval(a, pres)?.neg(),
        OperatorExpr::Add(a, b) => eval(a, pres)?.add(&eval(b, pres)?),
        OperatorExpr::Sub(a, b) => eval(a, pres)?.sub(&eval(b, pres)?),
        OperatorExpr::Mul(a, b) => eval(a, pres)?.mul(&eval(b, pres)?),
        OperatorExpr::Pow(a, n) => {
            let base = eval(a, pres)?;
            if *n >= 0 {
                base.pow(*n as u32)
            } else {
                invert_unit(&base, *n, a)?
            }
        }
    })
}

/// Evaluates in the skew algebra (in `∂`-form when `d` occurs) and returns
/// the normal-ordered `T`-form.
pub fn elaborate(e: &OperatorExpr) -> Result<DiffOp, ElaborateError> {
    let pres = if e.uses_d() { Presentation::D } else { Presentation::Theta };
    Ok(eval(e, pres)?.to_theta())
}

pub fn parse_operator(text: &str) -> Result<DiffOp, crate::CliError> {
    Ok(elaborate(&parse(text)?)?)
}
