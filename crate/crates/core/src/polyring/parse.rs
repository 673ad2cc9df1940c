//! Polynomial expression grammar:
//!
//! ```text
//! expr  := sign? term (('+'|'-') term)*
//! term  := coef ('*'? 'x' ('^' uint)?)? | 'x' ('^' uint)?
//! coef  := int | int '/' uint
//! ```
//!
//! Whitespace is ignored everywhere.

use std::iter::Peekable;
use std::str::Chars;

use crate::coeff::{FieldDesc, FieldElem};
use crate::error::{Error, Result};

use super::Poly;

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
    field: FieldDesc,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.src))
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.chars.peek().copied().filter(char::is_ascii_digit) {
            s.push(c);
            self.chars.next();
        }
        (!s.is_empty()).then_some(s)
    }

    fn power(&mut self) -> Result<usize> {
        if self.chars.peek() == Some(&'^') {
            self.chars.next();
            let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            d.parse().map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(FieldElem, usize)> {
        if self.chars.peek() == Some(&'x') {
            self.chars.next();
            return Ok((self.field.one(), self.power()?));
        }
        let num = self.digits().ok_or_else(|| self.err("expected coefficient or `x`"))?;
        let lit = if self.chars.peek() == Some(&'/') {
            self.chars.next();
            let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            format!("{num}/{den}")
        } else {
            num
        };
        let coef = self.field.parse_elem(&lit)?;
        let star = self.chars.peek() == Some(&'*');
        if star {
            self.chars.next();
        }
        if self.chars.peek() == Some(&'x') {
            self.chars.next();
            Ok((coef, self.power()?))
        } else if star {
            Err(self.err("expected `x` after `*`"))
        } else {
            Ok((coef, 0))
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field);
        let mut negative = match self.chars.peek() {
            Some('-') => {
                self.chars.next();
                true
            }
            Some('+') => {
                self.chars.next();
                false
            }
            _ => false,
        };
        loop {
            let (c, k) = self.term()?;
            let c = if negative { c.neg() } else { c };
            acc = &acc + &Poly::monomial(&c, k);
            match self.chars.next() {
                None => return Ok(acc),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(other) => return Err(self.err(&format!("unexpected `{other}`"))),
            }
        }
    }
}

pub(super) fn parse_poly(field: FieldDesc, s: &str) -> Result<Poly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut parser = Parser { chars: compact.chars().peekable(), field, src: s };
    parser.expr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let q = FieldDesc::Rationals;
        let p = parse_poly(q, "x^2 - 3x + 1").unwrap();
        assert_eq!(p, Poly::from_i64s(q, &[1, -3, 1]));
        assert_eq!(parse_poly(q, "x^3-2*x").unwrap(), Poly::from_i64s(q, &[0, -2, 0, 1]));
        assert_eq!(parse_poly(q, "1/2*x+3").unwrap().to_string(), "1/2*x+3");
        assert_eq!(parse_poly(q, "x + x").unwrap().to_string(), "2*x");
        assert_eq!(parse_poly(q, "-x").unwrap().to_string(), "-x");
        assert_eq!(parse_poly(q, "0").unwrap(), Poly::zero(q));
    }

    #[test]
    fn reduces_mod_p() {
        let f = FieldDesc::prime(3).unwrap();
        assert_eq!(parse_poly(f, "4x+5").unwrap().to_string(), "x+2");
    }

    #[test]
    fn malformed() {
        let q = FieldDesc::Rationals;
        for bad in ["", "x^", "2*", "x+", "y", "1/0", "x^2x", "++x", "3/-2"] {
            assert!(matches!(parse_poly(q, bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}
