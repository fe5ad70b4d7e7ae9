//! Polynomial text grammar.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' exponent)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! `exponent` is a positive integer literal. There is no implicit
//! multiplication; whitespace is insignificant. Error offsets are byte
//! offsets into the input.

use std::fmt;

use linesing_core::polyalg::{MPoly, PolyError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnexpectedChar(char),
    UnexpectedEnd,
    /// Something other than `+`, `-`, `*`, `^` or `)` follows a complete
    /// factor, e.g. `2x`.
    ImplicitMultiplication,
    UnknownVariable(String),
    MalformedExponent(String),
    ZeroDenominator,
    UnbalancedParenthesis,
    Variables(PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = self.offset;
        match &self.kind {
            ParseErrorKind::Empty => write!(f, "empty polynomial"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected {c:?} at offset {at}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input at offset {at}"),
            ParseErrorKind::ImplicitMultiplication => {
                write!(
                    f,
                    "missing operator at offset {at} (implicit multiplication is not allowed)"
                )
            }
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable {v:?} at offset {at}"),
            ParseErrorKind::MalformedExponent(why) => write!(f, "malformed exponent at offset {at}: {why}"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator at offset {at}"),
            ParseErrorKind::UnbalancedParenthesis => write!(f, "unbalanced parenthesis at offset {at}"),
            ParseErrorKind::Variables(e) => write!(f, "bad variable list: {e}"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Variable names in order of first appearance.
pub fn identifiers(text: &str) -> Result<Vec<String>, ParseError> {
    let mut seen: Vec<String> = Vec::new();
    for (_, tok) in tokenize(text)? {
        if let Tok::Ident(name) = tok {
            if !seen.contains(&name) {
                seen.push(name);
            }
        }
    }
    Ok(seen)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.offset(),
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some((_, t)) => self.err(ParseErrorKind::UnexpectedChar(tok_char(t))),
        }
    }

    fn constant(&self, c: BigRational) -> MPoly {
        MPoly::constant(self.vars, c).expect("variables checked before parsing")
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?).expect("same vars");
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?).expect("same vars");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?).expect("same vars");
        }
        match self.peek() {
            Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => Err(self.err(ParseErrorKind::ImplicitMultiplication)),
            _ => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let k = self.exponent()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let malformed = |p: &Self, why: &str| p.err(ParseErrorKind::MalformedExponent(why.to_string()));
        match self.peek() {
            Some(Tok::Int(n)) => {
                let k: u32 = match u32::try_from(n.clone()) {
                    Ok(k) if k <= MAX_EXPONENT => k,
                    _ => {
                        return Err(malformed(
                            self,
                            &format!("exponents above {MAX_EXPONENT} are not supported"),
                        ))
                    }
                };
                if k == 0 {
                    return Err(malformed(self, "exponent must be a positive integer"));
                }
                self.pos += 1;
                Ok(k)
            }
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
            Some(_) => Err(malformed(self, "exponent must be a positive integer literal")),
        }
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let Some((at, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err(ParseErrorKind::UnexpectedEnd));
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return Err(self.unexpected());
                    };
                    if d.is_zero() {
                        return Err(self.err(ParseErrorKind::ZeroDenominator));
                    }
                    self.pos += 1;
                    return Ok(self.constant(BigRational::new(n, d)));
                }
                Ok(self.constant(BigRational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                MPoly::var(self.vars, &name).map_err(|_| ParseError {
                    offset: at,
                    kind: ParseErrorKind::UnknownVariable(name),
                })
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    None => Err(ParseError {
                        offset: at,
                        kind: ParseErrorKind::UnbalancedParenthesis,
                    }),
                    Some(_) => Err(self.unexpected()),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn tok_char(t: &Tok) -> char {
    match t {
        Tok::Plus => '+',
        Tok::Minus => '-',
        Tok::Star => '*',
        Tok::Slash => '/',
        Tok::Caret => '^',
        Tok::LParen => '(',
        Tok::RParen => ')',
        Tok::Int(_) => '0',
        Tok::Ident(s) => s.chars().next().unwrap_or('_'),
    }
}

/// Parses `text` as a polynomial over `vars`.
pub fn parse_polynomial(text: &str, vars: &[&str]) -> Result<MPoly, ParseError> {
    MPoly::zero(vars).map_err(|e| ParseError {
        offset: 0,
        kind: ParseErrorKind::Variables(e),
    })?;
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError {
            offset: 0,
            kind: ParseErrorKind::Empty,
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
    };
    let out = p.expr()?;
    match p.peek() {
        None => Ok(out),
        Some(Tok::RParen) => Err(p.err(ParseErrorKind::UnbalancedParenthesis)),
        Some(_) => Err(p.unexpected()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TXY: [&str; 3] = ["t", "x", "y"];

    #[test]
    fn worked_example_round_trips_through_display() {
        let f = parse_polynomial("y^2 - x^3 - t^2*x^2", &TXY).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(parse_polynomial(&f.to_string(), &TXY).unwrap(), f);
    }

    #[test]
    fn zero_and_rationals() {
        assert!(parse_polynomial("0", &TXY).unwrap().is_zero());
        let f = parse_polynomial("-3/6*x + (x - 1/2*x)", &TXY).unwrap();
        assert!(f.is_zero());
        assert_eq!(
            parse_polynomial("(t + x)^2 - t^2 - 2*t*x", &TXY).unwrap(),
            parse_polynomial("x^2", &TXY).unwrap()
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let at = |s: &str| parse_polynomial(s, &TXY).unwrap_err();
        let e = at("x^y");
        assert_eq!(e.offset, 2);
        assert!(matches!(e.kind, ParseErrorKind::MalformedExponent(_)));
        assert_eq!(at("x^0").offset, 2);
        assert_eq!(at("").kind, ParseErrorKind::Empty);
        assert_eq!(at("   ").kind, ParseErrorKind::Empty);
        let e = at("x + z");
        assert_eq!((e.offset, e.kind), (4, ParseErrorKind::UnknownVariable("z".into())));
        assert_eq!(at("2x").kind, ParseErrorKind::ImplicitMultiplication);
        assert_eq!(at("2x").offset, 1);
        assert_eq!(at("x +").kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(at("x # y").kind, ParseErrorKind::UnexpectedChar('#'));
        assert_eq!(at("1/0").kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(at("(x + y").kind, ParseErrorKind::UnbalancedParenthesis);
        assert_eq!(at("x + y)").offset, 5);
        assert_eq!(at("x * -y").kind, ParseErrorKind::UnexpectedChar('-'));
    }

    #[test]
    fn identifiers_in_order() {
        assert_eq!(identifiers("y^2 - x^3 - t^2*x^2").unwrap(), ["y", "x", "t"]);
    }
}
