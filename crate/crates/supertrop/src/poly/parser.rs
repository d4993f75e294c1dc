//! Text syntax for polynomials with Puiseux series coefficients.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor
//!         | number ['/' number]
//!         | 't' ['^' exp]
//!         | 'x' digits ['^' digits]
//!         | '(' poly ')' ['^' digits]
//! exp    := ['-'] digits | '(' ['-'] digits ['/' digits] ')'
//! ```
//!
//! Variables are `x1`, `x2`, ... Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational as Q;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{coeff_map, poly_add, poly_mul, Poly};
use crate::instances::{PuiseuxRing, PuiseuxSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

type Series = PuiseuxSeries<Q>;
type SPoly = Poly<Series>;

/// Parse a polynomial. The number of variables is the largest index used,
/// raised to `nvars` when given.
pub fn parse_poly(src: &str, nvars: Option<usize>) -> Result<SPoly, ParseError> {
    let used = max_var(src)?;
    let n = match nvars {
        Some(n) if n < used => return Err(ParseError { pos: 0, message: format!("x{used} used with {n} variables") }),
        Some(n) => n,
        None => used,
    };
    let mut p = Parser { src: src.as_bytes(), pos: 0, nvars: n, ring: PuiseuxRing::new() };
    let f = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

/// Parse a single series, a polynomial without variables.
pub fn parse_series(src: &str) -> Result<Series, ParseError> {
    let f = parse_poly(src, Some(0))?;
    let c = f.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Series::zero);
    Ok(c)
}

/// Parse comma-separated series.
pub fn parse_point(src: &str) -> Result<Vec<Series>, ParseError> {
    if src.trim().is_empty() {
        return Ok(vec![]);
    }
    let mut out = vec![];
    let mut offset = 0;
    for part in src.split(',') {
        out.push(parse_series(part).map_err(|e| ParseError { pos: e.pos + offset, ..e })?);
        offset += part.len() + 1;
    }
    Ok(out)
}

fn max_var(src: &str) -> Result<usize, ParseError> {
    let b = src.as_bytes();
    let mut max = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let idx: usize = src[start..j]
                .parse()
                .map_err(|_| ParseError { pos: i, message: "expected a variable index after x".into() })?;
            if idx == 0 {
                return Err(ParseError { pos: i, message: "variables are numbered from x1".into() });
            }
            max = max.max(idx);
            i = j;
        } else {
            i += 1;
        }
    }
    Ok(max)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    ring: PuiseuxRing<Q>,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits"))
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let at = self.pos;
        let n = self.digits()?;
        u32::try_from(n).map_err(|_| ParseError { pos: at, message: "exponent too large".into() })
    }

    fn constant(&self, c: Series) -> SPoly {
        Poly::constant(&self.ring, self.nvars, c)
    }

    fn neg(&self, f: &SPoly) -> SPoly {
        coeff_map(f, |c: &Series| c.neg(), &Series::zero())
    }

    fn power(&self, f: &SPoly, k: u32) -> SPoly {
        let mut acc = self.constant(Series::one());
        for _ in 0..k {
            acc = poly_mul(&self.ring, &acc, f);
        }
        acc
    }

    fn poly(&mut self) -> Result<SPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = poly_add(&self.ring, &acc, &t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = poly_add(&self.ring, &acc, &self.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = poly_mul(&self.ring, &acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SPoly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let f = self.factor()?;
                Ok(self.neg(&f))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let d = if self.eat(b'/') { self.digits()? } else { BigInt::one() };
                if d.is_zero() {
                    return Err(self.err("division by zero"));
                }
                Ok(self.constant(Series::constant(Q::new(n, d))))
            }
            Some(b't') => {
                self.pos += 1;
                let e = if self.eat(b'^') { self.exponent()? } else { Q::one() };
                Ok(self.constant(Series::monomial(Q::one(), e)))
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.small()? as usize;
                let k = if self.eat(b'^') { self.small()? } else { 1 };
                Ok(self.power(&Poly::var(&self.ring, self.nvars, i - 1), k))
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.poly()?;
                self.expect(b')')?;
                if self.eat(b'^') {
                    let k = self.small()?;
                    Ok(self.power(&f, k))
                } else {
                    Ok(f)
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<Q, ParseError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.digits()?;
            let d = if self.eat(b'/') { self.digits()? } else { BigInt::one() };
            if d.is_zero() {
                return Err(self.err("division by zero"));
            }
            self.expect(b')')?;
            let q = Q::new(n, d);
            Ok(if neg { -q } else { q })
        } else {
            let neg = self.eat(b'-');
            let n = Q::from_integer(self.digits()?);
            Ok(if neg { -n } else { n })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::q;
    use crate::poly::{evaluate, Multidegree};

    #[test]
    fn mixed_polynomial() {
        let f = parse_poly("(1+t)*x1^2 + t^(1/2)*x2 + 3", None).unwrap();
        assert_eq!(f.nvars(), 2);
        assert_eq!(f.len(), 3);
        assert_eq!(f.to_string(), "(1 + t)*x1^2 + t^(1/2)*x2 + 3");
        assert_eq!(f.coeff(&Multidegree(vec![0, 0])), Some(&Series::constant(q(3, 1))));
    }

    #[test]
    fn series_literal() {
        let s = parse_series("1 + 2*t^(3/2) + -1*t^2").unwrap();
        let terms: Vec<(Q, Q)> = s.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        assert_eq!(terms, vec![(q(0, 1), q(1, 1)), (q(3, 2), q(2, 1)), (q(2, 1), q(-1, 1))]);
        assert_eq!(parse_series("t^-1 - t^(-1/3)").unwrap().ord(), Some(q(-1, 1)));
    }

    #[test]
    fn subtraction_cancels() {
        let f = parse_poly("x1 - t - (x1 - t)", None).unwrap();
        assert!(f.is_empty());
        let g = parse_poly("(x1 - t)^2", None).unwrap();
        assert_eq!(g.to_string(), "x1^2 + -2*t*x1 + t^2");
    }

    #[test]
    fn points_and_evaluation() {
        let ring = PuiseuxRing::<Q>::new();
        let f = parse_poly("x1*x2 - t^3", None).unwrap();
        let a = parse_point("t, t^2").unwrap();
        assert!(evaluate(&ring, &f, &a).unwrap().is_zero());
        assert_eq!(parse_point("0, 1/2").unwrap()[0], Series::zero());
        assert!(parse_point("").unwrap().is_empty());
    }

    #[test]
    fn explicit_arity() {
        assert_eq!(parse_poly("x1", Some(3)).unwrap().nvars(), 3);
        assert!(parse_poly("x4", Some(3)).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x1 + * 2", None).unwrap_err();
        assert_eq!(e.pos, 5);
        assert_eq!(parse_poly("x0", None).unwrap_err().pos, 0);
        assert!(parse_poly("(x1 + 1", None).is_err());
        assert!(parse_poly("1/0", None).is_err());
        assert!(parse_poly("x1 x2", None).is_err());
        assert_eq!(parse_point("t, t^").unwrap_err().pos, 5);
    }
}
