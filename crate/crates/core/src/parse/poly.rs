//! Recursive-descent parser for the canonical polynomial syntax:
//! sums of products of identifiers, integer or `p/q` literals, powers and
//! parentheses.

use std::fmt;

use crate::gca::{Element, SemifreeAlgebra};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
}

/// A parse failure at a 1-based column of the input text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyError {
    pub column: usize,
    pub kind: PolyErrorKind,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PolyErrorKind::Syntax(m) => write!(f, "column {}: {m}", self.column),
            PolyErrorKind::UnknownIdentifier(n) => write!(f, "column {}: unknown generator `{n}`", self.column),
        }
    }
}

impl std::error::Error for PolyError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push((col, Tok::Num(chars[start..k].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((col, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Op(c)));
            k += 1;
        } else {
            return Err(PolyError { column: col, kind: PolyErrorKind::Syntax(format!("unexpected character `{c}`")) });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    alg: &'a SemifreeAlgebra,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError { column: self.column(), kind: PolyErrorKind::Syntax(msg.into()) })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Element, PolyError> {
        let mut acc = Element::zero();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            acc.add_scaled(&if negative { -Q::one() } else { Q::one() }, &t);
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element, PolyError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Element, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("expected an exponent");
            };
            let Ok(e) = n.parse::<u32>() else {
                return self.err("exponent too large");
            };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => match n.parse::<i64>() {
                Ok(v) => {
                    self.pos += 1;
                    Ok(v)
                }
                Err(_) => self.err("integer literal too large"),
            },
            _ => self.err("expected an integer"),
        }
    }

    fn atom(&mut self) -> Result<Element, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(_)) => {
                let n = self.integer()?;
                if self.eat('/') {
                    let d = self.integer()?;
                    if d == 0 {
                        return self.err("zero denominator");
                    }
                    return Ok(Element::constant(Q::new(n, d)));
                }
                Ok(Element::constant(Q::from_int(n)))
            }
            Some(Tok::Ident(name)) => {
                let col = self.column();
                self.pos += 1;
                match self.alg.find(&name) {
                    Some(g) => Ok(self.alg.var(g)),
                    None => Err(PolyError { column: col, kind: PolyErrorKind::UnknownIdentifier(name) }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` with identifiers resolved against the generators of `alg`.
pub fn parse_polynomial(text: &str, alg: &SemifreeAlgebra) -> Result<Element, PolyError> {
    let toks = tokenize(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end, alg };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
