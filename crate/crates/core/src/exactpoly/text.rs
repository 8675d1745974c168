//! Canonical text form of rationals and polynomials.
//!
//! Printing emits terms in descending graded-lex order with coefficients as
//! `num/den` and variables `u1..uN`, e.g. `3/2*u1^2*u2 - u3`. Parsing accepts
//! any term order, whitespace, `*` products, `^` powers and parentheses.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n`, `-n` or `n/d` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = |message: &str| Error::Parse {
        column: 0,
        message: format!("{message}: `{s}`"),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("invalid rational numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("invalid rational denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(m);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", format_rational(&abs))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", format_rational(&abs))?,
            }
        }
        Ok(())
    }
}

fn format_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("u{}", i + 1)
            } else {
                format!("u{}^{}", i + 1, e)
            }
        })
        .collect();
    parts.join("*")
}

impl Polynomial {
    /// Parses the text form in `nvars` variables.
    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial> {
        let mut p = Parser {
            chars: s.char_indices().collect(),
            pos: 0,
            nvars,
            len: s.len(),
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(out)
    }

    /// Canonical text form (same as `Display`).
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    nvars: usize,
    len: usize,
}

impl Parser {
    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i) + 1
    }

    fn error(&self, message: &str) -> Error {
        let found = self
            .chars
            .get(self.pos)
            .map_or("end of input".to_string(), |&(_, c)| format!("`{c}`"));
        Error::Parse {
            column: self.column(),
            message: format!("{message} (found {found})"),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut negate = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negate = c == '-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                let f = self.power()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.factor()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('u') => {
                self.pos += 1;
                let idx = self.integer()?;
                if idx == 0 || idx as usize > self.nvars {
                    return Err(Error::Parse {
                        column: self.column(),
                        message: format!("variable u{idx} outside u1..u{}", self.nvars),
                    });
                }
                Ok(Polynomial::var(self.nvars, idx as usize - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                self.skip_ws();
                let mut q = Rational::from_integer(BigInt::from(num));
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den == 0 {
                        return Err(self.error("zero denominator"));
                    }
                    q /= Rational::from_integer(BigInt::from(den));
                }
                Ok(Polynomial::constant(self.nvars, q))
            }
            _ => Err(self.error("expected a number, a variable or `(`")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| Error::Parse {
            column: self.chars[start].0 + 1,
            message: format!("integer `{s}` too large"),
        })
    }
}
