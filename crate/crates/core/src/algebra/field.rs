//! The three coefficient fields: Q, F_p and Q(t).
//!
//! A [`Coeff`] always knows which field it belongs to. Binary operations
//! on coefficients from different fields fail with [`Error::MixedFields`]
//! through the `checked_*` methods; the operator impls panic instead, and
//! are meant for code paths where the field is already fixed.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::is_prime_u64;
use super::ratfun::RatFun;
use super::rational::{rational_sqrt, reduce_rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
    /// Rational functions in one parameter `t` over Q.
    RatFun,
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Prime(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::RatFun => write!(f, "Q(t)"),
        }
    }
}

pub(crate) fn mod_inv(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(p as i128) as u64)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Tonelli-Shanks. Returns the smaller of the two roots.
fn mod_sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul(tt, tt);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Some(r.min(p - r))
}

/// Element of F_p; `value` is always in `[0, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Fp {
        Fp { value: (value as i128).rem_euclid(modulus as i128) as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn with(self, value: u64) -> Fp {
        Fp { value, modulus: self.modulus }
    }

    fn add(self, o: Fp) -> Fp {
        self.with(((self.value as u128 + o.value as u128) % self.modulus as u128) as u64)
    }

    fn neg(self) -> Fp {
        self.with((self.modulus - self.value) % self.modulus)
    }

    fn mul(self, o: Fp) -> Fp {
        self.with(((self.value as u128 * o.value as u128) % self.modulus as u128) as u64)
    }

    fn inv(self) -> Option<Fp> {
        mod_inv(self.value, self.modulus).map(|v| self.with(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Prime(Fp),
    RatFun(RatFun),
}

impl Coeff {
    pub fn field(&self) -> Field {
        match self {
            Coeff::Rational(_) => Field::Rational,
            Coeff::Prime(x) => Field::Prime(x.modulus),
            Coeff::RatFun(_) => Field::RatFun,
        }
    }

    pub fn zero(field: Field) -> Coeff {
        Coeff::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Coeff {
        Coeff::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Coeff {
        match field {
            Field::Rational => Coeff::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Prime(Fp::new(n, p)),
            Field::RatFun => Coeff::RatFun(RatFun::from_rational(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    /// Embeds a rational into `field`. Fails over F_p when p divides the denominator.
    pub fn from_rational(field: Field, q: &BigRational) -> Result<Coeff> {
        Ok(match field {
            Field::Rational => Coeff::Rational(q.clone()),
            Field::Prime(p) => {
                Coeff::Prime(Fp { value: reduce_rational(q, p).ok_or(Error::DivisionByZero)?, modulus: p })
            }
            Field::RatFun => Coeff::RatFun(RatFun::from_rational(q.clone())),
        })
    }

    pub fn rational(n: i64, d: i64) -> Coeff {
        Coeff::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Prime(x) => x.value == 0,
            Coeff::RatFun(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Prime(x) => x.value == 1,
            Coeff::RatFun(r) => r.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_ratfun(&self) -> Option<&RatFun> {
        match self {
            Coeff::RatFun(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_fp(&self) -> Option<Fp> {
        match self {
            Coeff::Prime(x) => Some(*x),
            _ => None,
        }
    }

    fn mixed(&self, other: &Coeff) -> Error {
        Error::MixedFields(self.field(), other.field())
    }

    pub fn checked_add(&self, other: &Coeff) -> Result<Coeff> {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Ok(Coeff::Rational(a + b)),
            (Coeff::Prime(a), Coeff::Prime(b)) if a.modulus == b.modulus => Ok(Coeff::Prime(a.add(*b))),
            (Coeff::RatFun(a), Coeff::RatFun(b)) => Ok(Coeff::RatFun(a.add(b))),
            _ => Err(self.mixed(other)),
        }
    }

    pub fn checked_sub(&self, other: &Coeff) -> Result<Coeff> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Coeff) -> Result<Coeff> {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Ok(Coeff::Rational(a * b)),
            (Coeff::Prime(a), Coeff::Prime(b)) if a.modulus == b.modulus => Ok(Coeff::Prime(a.mul(*b))),
            (Coeff::RatFun(a), Coeff::RatFun(b)) => Ok(Coeff::RatFun(a.mul(b))),
            _ => Err(self.mixed(other)),
        }
    }

    pub fn checked_div(&self, other: &Coeff) -> Result<Coeff> {
        if self.field() != other.field() {
            return Err(self.mixed(other));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Coeff> {
        match self {
            Coeff::Rational(q) if !q.is_zero() => Ok(Coeff::Rational(q.recip())),
            Coeff::Prime(x) => x.inv().map(Coeff::Prime).ok_or(Error::DivisionByZero),
            Coeff::RatFun(r) => r.inv().map(Coeff::RatFun).ok_or(Error::DivisionByZero),
            _ => Err(Error::DivisionByZero),
        }
    }

    fn neg_ref(&self) -> Coeff {
        match self {
            Coeff::Rational(q) => Coeff::Rational(-q),
            Coeff::Prime(x) => Coeff::Prime(x.neg()),
            Coeff::RatFun(r) => Coeff::RatFun(r.neg()),
        }
    }

    /// Principal square root, if one exists in the field: the positive root
    /// over Q, the smaller residue over F_p.
    pub fn sqrt(&self) -> Option<Coeff> {
        match self {
            Coeff::Rational(q) => rational_sqrt(q).map(Coeff::Rational),
            Coeff::Prime(x) => mod_sqrt(x.value, x.modulus).map(|v| Coeff::Prime(x.with(v))),
            Coeff::RatFun(r) => r.sqrt().map(Coeff::RatFun),
        }
    }

    pub fn pow(&self, e: u32) -> Coeff {
        let mut acc = Coeff::one(self.field());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => write!(f, "{q}"),
            Coeff::Prime(x) => write!(f, "{}", x.value),
            Coeff::RatFun(r) => write!(f, "{r}"),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Coeff> for &Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}: {e}", stringify!($method)))
            }
        }
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.neg_ref()
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratfun::TPoly;

    #[test]
    fn rational_sum() {
        assert_eq!(&Coeff::rational(1, 2) + &Coeff::rational(1, 3), Coeff::rational(5, 6));
    }

    #[test]
    fn prime_product() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(Coeff::from_i64(f7, 4) * Coeff::from_i64(f7, 2), Coeff::one(f7));
    }

    #[test]
    fn ratfun_self_division() {
        let a = Coeff::RatFun(RatFun::from_poly(TPoly::new(
            vec![1.into(), (-2).into()].into_iter().map(BigRational::from_integer).collect(),
        )));
        assert_eq!(a.checked_div(&a).unwrap(), Coeff::one(Field::RatFun));
    }

    #[test]
    fn errors() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(Coeff::zero(Field::Rational).inv(), Err(Error::DivisionByZero));
        assert_eq!(Coeff::zero(f7).inv(), Err(Error::DivisionByZero));
        assert_eq!(
            Coeff::one(Field::Rational).checked_add(&Coeff::one(f7)),
            Err(Error::MixedFields(Field::Rational, f7))
        );
        let f5 = Field::prime(5).unwrap();
        assert!(Coeff::one(f5).checked_mul(&Coeff::one(f7)).is_err());
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn square_roots_mod_p() {
        for p in [3u64, 5, 7, 11, 13, 17, 97, 101] {
            let f = Field::prime(p).unwrap();
            for a in 0..p as i64 {
                let c = Coeff::from_i64(f, a);
                let is_square = (0..p as i64).any(|x| (x * x - a).rem_euclid(p as i64) == 0);
                match c.sqrt() {
                    Some(r) => assert_eq!(&r * &r, c),
                    None => assert!(!is_square, "{a} mod {p}"),
                }
            }
        }
    }

    #[test]
    fn rational_embedding_into_prime_field() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(Coeff::from_rational(f7, &BigRational::new(1.into(), 2.into())).unwrap(), Coeff::from_i64(f7, 4));
        assert!(Coeff::from_rational(f7, &BigRational::new(1.into(), 14.into())).is_err());
    }
}
