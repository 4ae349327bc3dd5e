//! Primality and integer factorization for prime supports.
//!
//! Field moduli are checked by trial division. Denominators of partial
//! quotients are arbitrary big integers, factored with small-prime trial
//! division, Miller-Rabin and Pollard-Brent.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Deterministic trial division up to sqrt(n).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

const SMALL_PRIME_BOUND: u32 = 10_000;

fn small_primes() -> Vec<u32> {
    (2..SMALL_PRIME_BOUND).filter(|&n| is_prime_u64(n as u64)).collect()
}

/// Miller-Rabin with the first twelve prime bases. Deterministic below
/// 3.3e24, overwhelmingly reliable above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, seed: u64) -> Option<BigUint> {
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32 + seed as u32);
    let m = 128u64;
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn split_into(n: BigUint, out: &mut BTreeSet<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.insert(n);
        return;
    }
    if let Some(r) = n.sqrt().to_u64().filter(|r| BigUint::from(*r).pow(2) == n) {
        split_into(BigUint::from(r), out);
        return;
    }
    for seed in 1.. {
        if let Some(d) = pollard_brent(&n, seed) {
            let other = &n / &d;
            split_into(d, out);
            split_into(other, out);
            return;
        }
    }
}

/// The set of distinct primes dividing `n` (empty for 0 and 1).
pub fn prime_factors(n: &BigUint) -> BTreeSet<BigUint> {
    let mut out = BTreeSet::new();
    if n.is_zero() {
        return out;
    }
    let mut n = n.clone();
    for p in small_primes() {
        let pb = BigUint::from(p);
        if (&n % &pb).is_zero() {
            out.insert(pb.clone());
            while (&n % &pb).is_zero() {
                n /= &pb;
            }
        }
        if n.is_one() {
            return out;
        }
    }
    split_into(n, &mut out);
    out
}
