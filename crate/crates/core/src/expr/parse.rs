//! Recursive-descent parser with byte-offset errors.

use super::{Expr, Gen};
use crate::{Error, Integer, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(Integer),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: Integer = src[start..i].parse().expect("digits parse");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(Error::Parse { offset: i, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.src.len())
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek() {
            Some(Tok::Int(n)) => {
                let v = n.to_i64().map_or_else(|| self.err("integer out of range"), Ok)?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let n = if self.eat('(') {
                let n = self.int()?;
                self.expect(')')?;
                n
            } else {
                self.int()?
            };
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn call(&mut self) -> Result<Box<Expr>> {
        self.expect('(')?;
        let e = self.expr()?;
        self.expect(')')?;
        Ok(Box::new(e))
    }

    fn atom(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "D" => Ok(Expr::D(self.call()?)),
                    "slashS" => Ok(Expr::SlashS(self.call()?)),
                    "flip" => Ok(Expr::Flip(self.call()?)),
                    "S" => {
                        self.expect('[')?;
                        let k = self.int()?;
                        self.expect(']')?;
                        Ok(Expr::Serre(k, self.call()?))
                    }
                    "X" => {
                        self.expect('(')?;
                        let w = self.int()?;
                        self.expect(',')?;
                        let s = self.int()?;
                        self.expect(')')?;
                        Ok(Expr::X(w, s))
                    }
                    _ => match Gen::from_name(&name) {
                        Some(g) => Ok(Expr::Gen(g)),
                        None => Err(Error::UnknownIdentifier { name, offset }),
                    },
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression; errors carry the byte offset of the offending token.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0, src };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn derivative_call() {
        assert_eq!(parse_expr("D(E2)").unwrap(), Expr::D(b(Expr::Gen(Gen::E2))));
    }

    #[test]
    fn serre_of_square() {
        let e = parse_expr("S[10](X(6,1)^2)").unwrap();
        assert_eq!(e, Expr::Serre(10, b(Expr::Pow(b(Expr::X(6, 1)), 2))));
    }

    #[test]
    fn precedence() {
        let a = parse_expr("E2*E4 - E6").unwrap();
        let c = parse_expr("E2*(E4 - E6)").unwrap();
        assert_ne!(a, c);
        assert!(matches!(a, Expr::Sub(..)));
        assert!(matches!(c, Expr::Mul(..)));
        assert!(matches!(parse_expr("-E2^2").unwrap(), Expr::Neg(_)));
        assert!(matches!(parse_expr("E4 - E6 - E2").unwrap(), Expr::Sub(ref l, _) if matches!(**l, Expr::Sub(..))));
    }

    #[test]
    fn negative_exponents() {
        assert_eq!(parse_expr("T^-3").unwrap(), parse_expr("T^(-3)").unwrap());
    }

    #[test]
    fn error_offsets() {
        assert_eq!(
            parse_expr("E2 + Q4"),
            Err(Error::UnknownIdentifier { name: "Q4".into(), offset: 5 })
        );
        match parse_expr("E2 * (E4") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("{other:?}"),
        }
        match parse_expr("E2 $ E4") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
    }
}
