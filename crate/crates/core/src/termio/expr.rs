//! Polynomial expressions in `n` and `k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::TermioError;
use crate::exactmath::{PolyNK, Rat};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Op(char),
}

struct Lexer<'a> {
    line: usize,
    col0: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    src: &'a str,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, TermioError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let col = col0 + src[..off].chars().count();
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = off;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = chars.get(i).map_or(src.len(), |x| x.0);
            out.push((Tok::Num(src[start..end].parse().expect("digits")), col));
        } else if c == 'n' || c == 'k' {
            out.push((Tok::Var(c), col));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(TermioError::syntax(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

impl Lexer<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.col0 + self.src.chars().count(), |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> TermioError {
        TermioError::syntax(self.line, self.col(), msg)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyNK, TermioError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyNK, TermioError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.unary()?;
                let c = d.to_poly_n().filter(|p| p.degree().unwrap_or(0) == 0).map(|p| p.coeff(0));
                match c {
                    Some(c) if !c.is_zero() => acc = acc.scale(&(Rat::one() / c)),
                    _ => {
                        return Err(TermioError::syntax(
                            self.line,
                            col,
                            "division is only allowed by nonzero constants",
                        ))
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<PolyNK, TermioError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyNK, TermioError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<PolyNK, TermioError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(PolyNK::constant(Rat::from_integer(v)))
            }
            Some(Tok::Var('n')) => {
                self.pos += 1;
                Ok(PolyNK::n())
            }
            Some(Tok::Var(_)) => {
                self.pos += 1;
                Ok(PolyNK::k())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses `src`, reporting positions as `line` and `col0 + offset`.
pub(crate) fn parse_poly_at(src: &str, line: usize, col0: usize) -> Result<PolyNK, TermioError> {
    let toks = lex(src, line, col0)?;
    let mut lx = Lexer {
        line,
        col0,
        toks,
        pos: 0,
        src,
    };
    let p = lx.expr()?;
    if lx.pos != lx.toks.len() {
        return Err(lx.err("trailing input"));
    }
    Ok(p)
}

/// A polynomial in `n` and `k`.
pub fn parse_poly(src: &str) -> Result<PolyNK, TermioError> {
    parse_poly_at(src, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rint;

    #[test]
    fn precedence() {
        let p = parse_poly("n^2+k^2+1").unwrap();
        assert_eq!(p.coeff(2, 0), rint(1));
        assert_eq!(p.coeff(0, 2), rint(1));
        assert_eq!(p.coeff(0, 0), rint(1));
        let q = parse_poly("-3/2*n + (k - 1)^2").unwrap();
        assert_eq!(q.coeff(1, 0), Rat::new((-3).into(), 2.into()));
        assert_eq!(q.coeff(0, 1), rint(-2));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("n + $") {
            Err(TermioError::Syntax { line: 1, col: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("n / k").is_err());
        assert!(parse_poly("(n + 1").is_err());
        assert!(parse_poly("n k").is_err());
    }
}
