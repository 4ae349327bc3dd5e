#![allow(dead_code)]

use cfreduce::{Coeff, Field, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(c: &[i64]) -> Poly {
    Poly::from_ints(Field::Rational, c)
}

pub fn r(n: i64, d: i64) -> Coeff {
    Coeff::rational(n, d)
}

pub fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// Small random element: `n/d` over Q, a residue over F_p.
pub fn coeff(rng: &mut StdRng, field: Field, range: i64) -> Coeff {
    match field {
        Field::Rational => r(rng.gen_range(-range..=range), rng.gen_range(1..=range.max(1))),
        _ => Coeff::from_i64(field, rng.gen_range(-range..=range)),
    }
}

pub fn nonzero_coeff(rng: &mut StdRng, field: Field, range: i64) -> Coeff {
    loop {
        let c = coeff(rng, field, range);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random polynomial of exact degree `deg`.
pub fn poly(rng: &mut StdRng, field: Field, deg: usize, range: i64) -> Poly {
    let mut c: Vec<Coeff> = (0..deg).map(|_| coeff(rng, field, range)).collect();
    c.push(nonzero_coeff(rng, field, range));
    Poly::new(field, c).unwrap()
}

pub fn monic(rng: &mut StdRng, field: Field, deg: usize, range: i64) -> Poly {
    let mut c: Vec<Coeff> = (0..deg).map(|_| coeff(rng, field, range)).collect();
    c.push(Coeff::one(field));
    Poly::new(field, c).unwrap()
}

/// Monic with integer coefficients in `[-range, range]`.
pub fn monic_int(rng: &mut StdRng, deg: usize, range: i64) -> Poly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-range..=range)).collect();
    c.push(1);
    q(&c)
}

/// Odd primes up to `bound`.
pub fn odd_primes(bound: u64) -> Vec<u64> {
    (3..=bound).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// Monic test input; integer coefficients over Q keep the heights manageable.
pub fn monic_small(rng: &mut StdRng, field: Field, deg: usize, range: i64) -> Poly {
    match field {
        Field::Rational => monic_int(rng, deg, range),
        _ => monic(rng, field, deg, range),
    }
}

/// Random element with integer values over Q.
pub fn int_coeff(rng: &mut StdRng, field: Field, range: i64) -> Coeff {
    Coeff::from_i64(field, rng.gen_range(-range..=range))
}

/// Random foldable continued fraction: a free head, then entries of positive
/// degree (some with an `X^-1` term) so no tail folds to zero.
pub fn formal_cf(rng: &mut StdRng, field: Field, len: usize) -> cfreduce::transform::FormalCF {
    use cfreduce::transform::{FormalCF, PolyFraction};
    let mut entries = Vec::with_capacity(len);
    let head_deg = rng.gen_range(0..=2);
    entries.push(PolyFraction::from_poly(poly(rng, field, head_deg, 9)));
    for _ in 1..len {
        let deg = rng.gen_range(1..=2);
        let mut e = PolyFraction::from_poly(poly(rng, field, deg, 9));
        if rng.gen_bool(0.3) {
            e = e.checked_add(&PolyFraction::monomial(nonzero_coeff(rng, field, 9), -1)).unwrap();
        }
        entries.push(e);
    }
    FormalCF::new(entries).unwrap()
}
