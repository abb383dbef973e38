//! Parser for the polynomial text syntax, e.g. `(3/2)*x1^2*x3 - x2 + 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Polynomial;
use crate::error::{Error, Result};

type QPoly = Polynomial<BigRational>;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

fn err(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        column: pos + 1,
        message: message.into(),
    }
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?)?;
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(err(at, "division by a non-constant or zero"));
                }
                let c = d
                    .coeff(&super::Monomial::one(self.nvars()))
                    .cloned()
                    .unwrap_or_else(BigRational::zero);
                acc = acc.scale(&(BigRational::from_integer(1.into()) / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let k = self.digits().ok_or_else(|| err(start, "expected a nonnegative exponent"))?;
            let k: u32 = k.try_into().map_err(|_| err(start, "exponent too large"))?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn atom(&mut self) -> Result<QPoly> {
        let n = self.nvars();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.digits().expect("digit present");
                Ok(Polynomial::constant(n, BigRational::from_integer(v)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let v = self
                    .names
                    .iter()
                    .position(|x| *x == name)
                    .ok_or_else(|| err(start, format!("unknown variable '{name}'")))?;
                Ok(Polynomial::var(n, v))
            }
            _ => Err(err(self.pos, "expected a term")),
        }
    }
}

/// Parses a polynomial over variables named `x1 .. x{nvars}`.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<QPoly> {
    let names: Vec<String> = (1..=nvars).map(|i| format!("x{i}")).collect();
    parse_polynomial_with(text, &names)
}

/// Parses a polynomial over the given variable names.
pub fn parse_polynomial_with(text: &str, names: &[String]) -> Result<QPoly> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        names,
    };
    let out = parser.expr()?;
    if parser.peek().is_some() {
        return Err(err(parser.pos, "unexpected trailing input"));
    }
    Ok(out)
}
