//! Polynomial expressions in `X` with coefficients in Q or Q(t).
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'X' | 't' | '(' expr ')'
//! ```
//!
//! Division is only by expressions free of `X`. No floating point.

use cfreduce::algebra::RatFun;
use cfreduce::{Coeff, Field, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.msg)
    }
}

/// A parsed expression over Q(t), remembering whether `t` occurred.
#[derive(Debug, Clone)]
pub struct PolyExpr {
    pub source: String,
    poly: Poly,
    uses_t: bool,
}

impl PolyExpr {
    pub fn parse(source: &str) -> Result<PolyExpr, ParseError> {
        let mut p = Parser { chars: source.chars().map(normalize_char).collect(), pos: 0, uses_t: false };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
        }
        Ok(PolyExpr { source: source.to_string(), poly, uses_t: p.uses_t })
    }

    pub fn uses_t(&self) -> bool {
        self.uses_t
    }

    /// Q when `t` does not occur, Q(t) otherwise.
    pub fn natural_field(&self) -> Field {
        if self.uses_t {
            Field::RatFun
        } else {
            Field::Rational
        }
    }

    /// The polynomial over Q(t), or over Q when `field` is `Rational`.
    pub fn to_poly(&self, field: Field) -> Result<Poly, ParseError> {
        match field {
            Field::RatFun => Ok(self.poly.clone()),
            Field::Rational => {
                if self.uses_t {
                    return Err(ParseError { pos: 0, msg: format!("'{}' depends on t", self.source) });
                }
                let coeffs = self.poly.coeffs().iter().map(|c| Coeff::Rational(constant_of(c))).collect();
                Ok(Poly::new(Field::Rational, coeffs).expect("single field"))
            }
            Field::Prime(_) => unreachable!("reduce after parsing"),
        }
    }

    /// The value as a coefficient, when it does not involve `X`.
    pub fn to_coeff(&self, field: Field) -> Result<Coeff, ParseError> {
        if self.poly.degree().unwrap_or(0) > 0 {
            return Err(ParseError { pos: 0, msg: format!("'{}' must not involve X", self.source) });
        }
        let c = self.to_poly(field)?.coeff(0);
        Ok(c)
    }
}

fn constant_of(c: &Coeff) -> BigRational {
    c.as_ratfun().and_then(|f| f.as_constant()).expect("t-free coefficient")
}

fn normalize_char(c: char) -> char {
    match c {
        '\u{2212}' => '-',
        '\u{00b7}' | '\u{00d7}' => '*',
        c => c,
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    uses_t: bool,
}

fn konst(q: BigRational) -> Poly {
    Poly::constant(Coeff::RatFun(RatFun::from_rational(q)))
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                if rhs.degree().unwrap_or(0) > 0 {
                    return Err(ParseError { pos: at, msg: "division by an expression in X".into() });
                }
                if rhs.is_zero() {
                    return Err(ParseError { pos: at, msg: "division by zero".into() });
                }
                acc.scale(&rhs.coeff(0).inv().expect("nonzero"))
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(ParseError { pos: start, msg: "exponent must be a nonnegative integer".into() });
        }
        let e: u32 = digits
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError { pos: start, msg: format!("exponent {digits} is too large") })?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                if self.chars.get(self.pos) == Some(&'.') {
                    return Err(self.error("decimal points are not accepted; write fractions as a/b"));
                }
                let n: BigInt = digits.parse().expect("digits");
                Ok(konst(BigRational::from_integer(n)))
            }
            Some('X' | 'x') => {
                self.pos += 1;
                Ok(Poly::x(Field::RatFun))
            }
            Some('t') => {
                self.pos += 1;
                self.uses_t = true;
                Ok(Poly::constant(Coeff::RatFun(RatFun::t())))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// A rational constant such as `-3/4`.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let e = PolyExpr::parse(s)?;
    let c = e.to_coeff(Field::Rational)?;
    Ok(c.as_rational().cloned().unwrap_or_else(BigRational::zero))
}
