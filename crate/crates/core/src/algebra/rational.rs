//! Helpers on exact rationals: square roots, p-adic valuations, prime supports.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::prime_factors;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Nonnegative square root of a rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn valuation(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64)
}

/// Image of `q` in F_p; `None` when `p` divides the reduced denominator.
pub fn reduce_rational(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = q.denom().mod_floor(&pb);
    if d.is_zero() {
        return None;
    }
    let n = q.numer().mod_floor(&pb);
    let n = to_u64(&n);
    let d = to_u64(&d);
    let inv = super::field::mod_inv(d, p)?;
    Some(((n as u128 * inv as u128) % p as u128) as u64)
}

fn to_u64(n: &BigInt) -> u64 {
    let (_, digits) = n.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Set of primes dividing the numerator or denominator of a nonzero rational.
pub fn prime_support(q: &BigRational) -> BTreeSet<BigUint> {
    let mut s = prime_factors(&q.numer().magnitude().clone());
    s.extend(prime_factors(q.denom().magnitude()));
    s
}

/// Primes dividing the reduced denominator.
pub fn denominator_primes(q: &BigRational) -> BTreeSet<BigUint> {
    prime_factors(q.denom().magnitude())
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub fn from_biguint(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, n))
}
