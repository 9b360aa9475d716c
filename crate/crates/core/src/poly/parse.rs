//! Polynomial expression grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" unary) | ("/" INT))*
//! unary  := "-" unary | "+" unary | power
//! power  := atom ("^" INT)?
//! atom   := INT | IDENT | "(" expr ")"
//! ```
//!
//! Juxtaposition (`2x`, `x y`) is rejected; multiplication is always `*`.
//! Division is only allowed by a nonzero integer literal so that printed
//! rational coefficients read back.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Field, PolyError, PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq)]
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
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>,
}

fn error(line: usize, column: usize, message: impl Into<String>) -> PolyError {
    PolyError::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize, usize)>, PolyError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let chars: Vec<char> = lx.src.chars().collect();
        let (mut line, mut col) = (1usize, 1usize);
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            if c == '\n' {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            if c.is_whitespace() {
                i += 1;
                col += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                lx.toks.push((Tok::Int(s.parse().unwrap()), l0, c0));
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                lx.toks.push((Tok::Ident(s), l0, c0));
                continue;
            }
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => return Err(error(l0, c0, format!("unexpected character `{other}`"))),
            };
            lx.toks.push((t, l0, c0));
            i += 1;
            col += 1;
        }
        lx.toks.push((Tok::End, line, col));
        Ok(lx.toks)
    }
}

struct Parser<'r, F: Field> {
    ring: &'r Arc<PolyRing<F>>,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = self.toks[self.pos];
        (l, c)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let (l, c) = self.here();
                    let Tok::Int(d) = self.bump() else {
                        return Err(error(l, c, "division is only allowed by an integer literal"));
                    };
                    if d.is_zero() {
                        return Err(error(l, c, "division by zero"));
                    }
                    let field = self.ring.field();
                    let inv = field
                        .from_ratio(&BigRational::new(BigInt::from(1), d))
                        .ok_or_else(|| error(l, c, "divisor vanishes in the coefficient field"))?;
                    acc = acc.scale(&inv);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    let (l, c) = self.here();
                    return Err(error(l, c, "implicit multiplication is not allowed; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<F>, PolyError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>, PolyError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (l, c) = self.here();
            let Tok::Int(e) = self.bump() else {
                return Err(error(l, c, "exponent must be a non-negative integer literal"));
            };
            let e: u32 = e
                .try_into()
                .map_err(|_| error(l, c, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>, PolyError> {
        let (l, c) = self.here();
        match self.bump() {
            Tok::Int(v) => Ok(self.ring.constant(self.ring.field().from_bigint(&v))),
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(self.ring.var(i)),
                None => Err(error(l, c, format!("unknown variable `{name}`"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let (l2, c2) = self.here();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err(error(l2, c2, "expected `)`")),
                }
            }
            Tok::End => Err(error(l, c, "unexpected end of input")),
            t => Err(error(l, c, format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, src: &str) -> Result<Polynomial<F>, PolyError> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { ring, toks, pos: 0 };
    let out = p.expr()?;
    let (l, c) = p.here();
    match p.peek() {
        Tok::End => Ok(out),
        Tok::RParen => Err(error(l, c, "unbalanced `)`")),
        _ => Err(error(l, c, "implicit multiplication is not allowed; use `*`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PrimeField, Rationals};

    fn ring() -> Arc<PolyRing<Rationals>> {
        PolyRing::new(&["x1", "x2", "x3"], Rationals, MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn parses_grammar_example() {
        let r = ring();
        let f = r.parse("x1^2*x2 - 3*x3").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string(), "x1^2*x2 - 3*x3");
        let g = r.parse("-(x1 + 2)^2").unwrap();
        assert_eq!(g.to_string(), "-x1^2 - 4*x1 - 4");
    }

    #[test]
    fn rejects_juxtaposition() {
        let r = ring();
        for bad in ["2x1", "2 x1", "x1 x2", "x1(x2)", "(x1)(x2)"] {
            match r.parse(bad) {
                Err(PolyError::Parse { message, .. }) => {
                    assert!(message.contains("implicit"), "{bad}: {message}")
                }
                other => panic!("{bad} parsed: {other:?}"),
            }
        }
    }

    #[test]
    fn reports_line_and_column() {
        let r = ring();
        match r.parse("x1 +\n  y") {
            Err(PolyError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(r.parse("x1^").is_err());
        assert!(r.parse("(x1").is_err());
        assert!(r.parse("x1)").is_err());
        assert!(r.parse("x1/0").is_err());
    }

    #[test]
    fn rational_coefficients_roundtrip() {
        let r = ring();
        let f = r.parse("x1/2 - 7/3*x2").unwrap();
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
        let fp = PolyRing::new(&["x"], PrimeField::new(7).unwrap(), MonomialOrder::Lex).unwrap();
        assert!(fp.parse("x/7").is_err());
        assert_eq!(fp.parse("x/2").unwrap(), fp.parse("4*x").unwrap());
    }
}
