use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Signed;

use super::field::{Coeff, Field};
use super::ratfun::TPoly;
use crate::error::{Error, Result};

/// Dense univariate polynomial in `X`; `coeffs[i]` is the coefficient of `X^i`.
///
/// The zero polynomial has no coefficients and degree `None`, which orders
/// below every `Some(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Coeff>,
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<Coeff>) -> Result<Poly> {
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::MixedFields(field, c.field()));
        }
        Ok(Poly::from_vec(field, coeffs))
    }

    pub(crate) fn from_vec(field: Field, mut coeffs: Vec<Coeff>) -> Poly {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(Coeff::one(field))
    }

    pub fn constant(c: Coeff) -> Poly {
        Poly::from_vec(c.field(), vec![c])
    }

    pub fn x(field: Field) -> Poly {
        Poly::from_ints(field, &[0, 1])
    }

    /// `c * X^n`.
    pub fn monomial(c: Coeff, n: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![Coeff::zero(field); n];
        coeffs.push(c);
        Poly::from_vec(field, coeffs)
    }

    /// Integer coefficients in ascending degree.
    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::from_vec(field, coeffs.iter().map(|&n| Coeff::from_i64(field, n)).collect())
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Poly {
        Poly::from_vec(Field::Rational, coeffs.iter().cloned().map(Coeff::Rational).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Coeff> {
        self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Coeff {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Coeff::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with `i64::MIN` for the zero polynomial.
    pub fn degree_i64(&self) -> i64 {
        self.degree().map_or(i64::MIN, |d| d as i64)
    }

    pub fn leading(&self) -> Option<&Coeff> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Coeff::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::from_vec(
            self.field,
            (0..n)
                .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        if self.field == Field::Rational {
            return Ok(Poly::from_tpoly(&self.to_tpoly().mul(&other.to_tpoly())));
        }
        let mut out = vec![Coeff::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Poly::from_vec(self.field, out))
    }

    /// Rational coefficients as a dense polynomial over Q, for the integer kernels.
    fn to_tpoly(&self) -> TPoly {
        TPoly::new(self.coeffs.iter().map(|c| c.as_rational().expect("rational coefficients").clone()).collect())
    }

    fn from_tpoly(p: &TPoly) -> Poly {
        Poly::from_rationals(p.coeffs())
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        Poly::from_vec(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor)?;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        if self.field == Field::Rational {
            let (q, r) = self.to_tpoly().divrem(&divisor.to_tpoly());
            return Ok((Poly::from_tpoly(&q), Poly::from_tpoly(&r)));
        }
        let lead_inv = divisor.coeffs[db].inv()?;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Coeff::zero(self.field); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Poly::from_vec(self.field, quot), Poly::from_vec(self.field, rem)))
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Precondition(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        if self.field == Field::Rational {
            return Ok(Poly::from_tpoly(&self.to_tpoly().gcd(&other.to_tpoly())));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_vec(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Coeff::from_i64(self.field, i as i64)).collect(),
        )
    }

    pub fn eval(&self, at: &Coeff) -> Coeff {
        self.coeffs.iter().rev().fold(Coeff::zero(self.field), |acc, c| &(&acc * at) + c)
    }

    /// Rebuilds the polynomial over another field, mapping each coefficient.
    pub fn try_map(&self, field: Field, mut f: impl FnMut(&Coeff) -> Result<Coeff>) -> Result<Poly> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Poly::new(field, coeffs)
    }

    /// Rational coefficients, or an error if the field is not Q.
    pub fn rational_coeffs(&self) -> Result<Vec<BigRational>> {
        if self.field != Field::Rational {
            return Err(Error::NonRationalCoefficients(self.field));
        }
        Ok(self.coeffs.iter().map(|c| c.as_rational().unwrap().clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}: {e}", stringify!($method)))
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Splits a coefficient into (is_negative, magnitude text) for printing.
pub(crate) fn term_parts(c: &Coeff) -> (bool, String) {
    match c {
        Coeff::Rational(q) => (q.is_negative(), q.abs().to_string()),
        Coeff::Prime(x) => (false, x.value().to_string()),
        Coeff::RatFun(r) => match r.as_constant() {
            Some(q) => (q.is_negative(), q.abs().to_string()),
            None => {
                let s = r.to_string();
                if s.starts_with('(') {
                    (false, s)
                } else {
                    (false, format!("({s})"))
                }
            }
        },
    }
}

/// Prints `X^2 - 1/2*X + 3`; the output parses back to the same polynomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = term_parts(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match deg {
                0 => None,
                1 => Some("X".to_string()),
                d => Some(format!("X^{d}")),
            };
            match mono {
                None => write!(f, "{mag}")?,
                Some(m) if mag == "1" => write!(f, "{m}")?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(Field::Rational, c)
    }

    #[test]
    fn divrem_examples() {
        let (quo, r) = q(&[-1, 0, 1]).divrem(&q(&[-1, 1])).unwrap();
        assert_eq!((quo, r), (q(&[1, 1]), Poly::zero(Field::Rational)));

        let (quo, r) = q(&[0, 0, 0, 1]).divrem(&q(&[0, 2])).unwrap();
        assert_eq!(quo, Poly::from_rationals(&[rat(0, 1), rat(0, 1), rat(1, 2)]));
        assert!(r.is_zero());

        // (X^2 - X + 1)^2 = X^4 - 2X^3 + 3X^2 - 2X + 1, so the remainder is 4X + 1.
        let (quo, r) = q(&[2, 2, 3, -2, 1]).divrem(&q(&[1, -1, 1])).unwrap();
        assert_eq!(quo, q(&[1, -1, 1]));
        assert_eq!(r, q(&[1, 4]));
    }

    #[test]
    fn divrem_by_zero() {
        assert_eq!(q(&[1]).divrem(&Poly::zero(Field::Rational)), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])).unwrap(), q(&[-1, 1]));
        assert_eq!(Poly::zero(Field::Rational).gcd(&q(&[0, 1])).unwrap(), q(&[0, 1]));
        assert_eq!(Poly::zero(Field::Rational).gcd(&Poly::zero(Field::Rational)), Err(Error::BothZero));
    }

    #[test]
    fn zero_degree_orders_first() {
        assert!(Poly::zero(Field::Rational).degree() < q(&[5]).degree());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f7 = Field::prime(7).unwrap();
        assert!(q(&[1, 1]).checked_add(&Poly::from_ints(f7, &[1, 1])).is_err());
        assert!(Poly::new(Field::Rational, vec![Coeff::one(f7)]).is_err());
    }

    #[test]
    fn display() {
        let p = Poly::from_rationals(&[rat(-5, 8), rat(1, 2)]);
        assert_eq!(p.to_string(), "1/2*X - 5/8");
        assert_eq!(q(&[2, 2, 3, -2, 1]).to_string(), "X^4 - 2*X^3 + 3*X^2 + 2*X + 2");
        assert_eq!(q(&[0, -1]).to_string(), "-X");
    }
}
