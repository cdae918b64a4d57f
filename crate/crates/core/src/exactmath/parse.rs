//! Parser for rational expressions in `N`, e.g. `8(2(N+1)^2-3)/((N+1)N(N-1)(N-2))`.
//!
//! Grammar (juxtaposition is multiplication, same precedence as `*` and `/`):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/')? factor)*
//! factor  := primary ('^' integer)?
//! primary := integer | 'N' | '(' expr ')'
//! ```

use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;

use super::ratfunc::RatFuncN;
use crate::error::{Error, Result};

pub fn parse_ratfunc(src: &str) -> Result<RatFuncN> {
    let mut p = Parser { it: src.chars().peekable() };
    let v = p.expr()?;
    p.skip_ws();
    match p.it.next() {
        None => Ok(v),
        Some(c) => Err(Error::Parse(format!("unexpected '{c}' in {src:?}"))),
    }
}

struct Parser<'a> {
    it: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.it.peek().is_some_and(|c| c.is_whitespace()) {
            self.it.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.it.peek().copied()
    }

    fn expr(&mut self) -> Result<RatFuncN> {
        let mut acc = match self.peek() {
            Some('-') | Some('\u{2212}') => {
                self.it.next();
                -self.term()?
            }
            Some('+') => {
                self.it.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.it.next();
                    acc = &acc + &self.term()?;
                }
                Some('-') | Some('\u{2212}') => {
                    self.it.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFuncN> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.it.next();
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.it.next();
                    acc = acc.checked_div(&self.factor()?)?;
                }
                Some(c) if c == '(' || c == 'N' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFuncN> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.it.next();
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse(format!("exponent {e} too large")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RatFuncN> {
        match self.peek() {
            Some('N') => {
                self.it.next();
                Ok(RatFuncN::var())
            }
            Some('(') => {
                self.it.next();
                let v = self.expr()?;
                match self.peek() {
                    Some(')') => {
                        self.it.next();
                        Ok(v)
                    }
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(RatFuncN::from_rational(BigInt::from(v).into()))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let mut s = String::new();
        while let Some(c) = self.it.peek().copied().filter(char::is_ascii_digit) {
            s.push(c);
            self.it.next();
        }
        s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_products() {
        let f = parse_ratfunc("8(2(N+1)^2-3)/((N+1)N(N-1)(N-2))").unwrap();
        let g = parse_ratfunc("(16*N^2+32*N-8)/(N^4-2*N^3-N^2+2*N)").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn leading_minus_binds_whole_term() {
        let f = parse_ratfunc("-3(N+1)/(N(N-1))").unwrap();
        assert_eq!(f.eval_int(3).unwrap(), BigInt::from(-2).into());
    }

    #[test]
    fn roundtrips_display() {
        for s in ["(N+1)/N", "-1/(N^3-N)", "1/(2*N)", "7", "0", "N^2-2"] {
            assert_eq!(parse_ratfunc(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("N+").is_err());
        assert!(parse_ratfunc("(N").is_err());
        assert!(parse_ratfunc("x").is_err());
        assert!(parse_ratfunc("1/(N-N)").is_err());
    }
}
