//! Literal grammar shared by polynomial, Laurent and vector-field inputs.
//!
//! ```text
//! expr   := sign? term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := INT ('/' INT)? | VAR ('^' '-'? INT)?
//! VAR    := 'x' | 'x' DIGITS | 'z'
//! ```
//!
//! `x` alone is an alias for `x0`. Exponents may be negative at this level;
//! each consumer decides whether it accepts them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{JetError, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X(usize),
    Z,
}

#[derive(Debug, Clone)]
pub struct Power {
    pub var: Var,
    pub exponent: i64,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub struct Term {
    pub coeff: Rational,
    pub powers: Vec<Power>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn err(column: usize, message: impl Into<String>) -> JetError {
    JetError::Parse {
        column,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push((Tok::Int(text.parse().expect("digits")), col));
            }
            'x' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let index = if start == i {
                    0
                } else {
                    let text: String = chars[start..i].iter().collect();
                    text.parse::<usize>()
                        .map_err(|_| err(col, "variable index too large"))?
                };
                out.push((Tok::Var(Var::X(index)), col));
            }
            'z' => {
                out.push((Tok::Var(Var::Z), col));
                i += 1;
            }
            other => return Err(err(col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.bump() {
            Some((Tok::Int(n), _)) => Ok(n),
            Some((_, col)) => Err(err(col, "expected an integer")),
            None => Err(err(self.end_col, "expected an integer, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negative = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negative = true;
                }
                None => break,
                Some(_) => return Err(err(self.column(), "expected '+' or '-'")),
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = Rational::one();
        let mut powers = Vec::new();
        let mut seen_factor = false;
        loop {
            match self.peek() {
                Some(Tok::Int(_)) => {
                    let num = self.integer()?;
                    let mut value = Rational::from_integer(num);
                    if self.peek() == Some(&Tok::Slash) {
                        let col = self.column();
                        self.bump();
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(err(col, "zero denominator"));
                        }
                        value /= Rational::from_integer(den);
                    }
                    coeff *= value;
                }
                Some(Tok::Var(_)) => {
                    let (tok, column) = self.bump().expect("peeked");
                    let Tok::Var(var) = tok else { unreachable!() };
                    let mut exponent = 1i64;
                    if self.peek() == Some(&Tok::Caret) {
                        self.bump();
                        let neg = if self.peek() == Some(&Tok::Minus) {
                            self.bump();
                            true
                        } else {
                            false
                        };
                        let col = self.column();
                        let e = self.integer()?;
                        let e: i64 = e.try_into().map_err(|_| err(col, "exponent too large"))?;
                        exponent = if neg { -e } else { e };
                    }
                    powers.push(Power {
                        var,
                        exponent,
                        column,
                    });
                }
                Some(Tok::Star) if seen_factor => {
                    self.bump();
                    if !matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Var(_))) {
                        return Err(err(self.column(), "expected a factor after '*'"));
                    }
                    continue;
                }
                _ => break,
            }
            seen_factor = true;
        }
        if !seen_factor {
            return Err(err(self.column(), "expected a term"));
        }
        Ok(Term { coeff, powers })
    }
}

pub fn parse_terms(src: &str) -> Result<Vec<Term>> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(err(1, "empty expression"));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end_col: src.chars().count() + 1,
    };
    parser.expr()
}

/// Splits a comma-separated component list, keeping the column offset of
/// each piece so errors point into the original string.
pub fn split_components(src: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in src.split(',') {
        out.push((offset, piece));
        offset += piece.chars().count() + 1;
    }
    out
}

pub fn shift_column(e: JetError, offset: usize) -> JetError {
    match e {
        JetError::Parse { column, message } => JetError::Parse {
            column: column + offset,
            message,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn parses_mixed_terms() {
        let t = parse_terms("3/2*x0^2 x1 - x1^3 + 5").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].coeff, frac(3, 2));
        assert_eq!(t[0].powers.len(), 2);
        assert_eq!(t[1].coeff, rat(-1));
        assert_eq!(t[2].coeff, rat(5));
        assert!(t[2].powers.is_empty());
    }

    #[test]
    fn negative_exponents_and_alias() {
        let t = parse_terms("-z^-2 + 2x").unwrap();
        assert_eq!(t[0].powers[0].exponent, -2);
        assert_eq!(t[0].coeff, rat(-1));
        assert_eq!(t[1].powers[0].var, Var::X(0));
    }

    #[test]
    fn reports_columns() {
        match parse_terms("x0 + ? ") {
            Err(JetError::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_terms("x0 +") {
            Err(JetError::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_terms("").is_err());
        assert!(parse_terms("1/0").is_err());
    }
}
