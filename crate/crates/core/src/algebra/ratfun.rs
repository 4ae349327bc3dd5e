//! Rational functions in the parameter `t` over Q.
//!
//! These are the coefficients of the one-parameter function field Q(t).
//! The numerator and denominator are kept coprime with a monic
//! denominator, so structural equality is value equality.

use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::is_probable_prime;
use super::rational::rational_sqrt;

/// Dense polynomial in `t` over Q, coefficients in ascending degree.
/// Trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TPoly(Vec<BigRational>);

impl TPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    pub fn zero() -> Self {
        TPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        TPoly::new(vec![c])
    }

    pub fn one() -> Self {
        TPoly::constant(BigRational::one())
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        TPoly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        TPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero)).collect())
    }

    pub fn neg(&self) -> Self {
        TPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let (a, da) = integral(&self.0);
        let (b, db) = integral(&other.0);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        from_integral(out, &(da * db))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let db = divisor.degree().expect("division by zero polynomial");
        if self.0.len() <= db {
            return (TPoly::zero(), self.clone());
        }
        if db == 0 {
            return (self.scale(&divisor.0[0].recip()), TPoly::zero());
        }
        // Pseudo-division over Z: lc^e A = Q B + R, then rescale.
        let (mut rem, den_a) = integral(&self.0);
        let (b, den_b) = integral(&divisor.0);
        let lc = &b[db];
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        let mut lc_pow = BigInt::one();
        for k in (0..quot.len()).rev() {
            let top = rem.pop().expect("nonempty");
            for c in quot[k + 1..].iter_mut().chain(rem.iter_mut()) {
                *c *= lc;
            }
            lc_pow *= lc;
            if !top.is_zero() {
                for (j, bj) in b[..db].iter().enumerate() {
                    rem[k + j] -= &top * bj;
                }
            }
            quot[k] = top;
        }
        let scale = &lc_pow * &den_a;
        let quot = from_integral(quot.into_iter().map(|c| c * &den_b).collect(), &scale);
        (quot, from_integral(rem, &scale))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => TPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.degree(), other.degree()) {
            (None, _) => return other.monic(),
            (_, None) => return self.monic(),
            (Some(0), _) | (_, Some(0)) => return TPoly::one(),
            _ => {}
        }
        let g = modular_gcd(&primitive_part(&self.0), &primitive_part(&other.0));
        TPoly::new(g.into_iter().map(BigRational::from_integer).collect()).monic()
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    /// Multiplicity of `tau` as a root; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, tau: &BigRational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin = TPoly::new(vec![-tau.clone(), BigRational::one()]);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.divrem(&lin);
            if !r.is_zero() {
                return Some(k);
            }
            p = q;
            k += 1;
        }
    }

    /// Square root in Q[t] if this polynomial is a perfect square.
    pub fn sqrt(&self) -> Option<Self> {
        let n = match self.degree() {
            None => return Some(TPoly::zero()),
            Some(n) if n % 2 == 1 => return None,
            Some(n) => n,
        };
        let k = n / 2;
        let lead = rational_sqrt(&self.0[n])?;
        // Coefficients of the root from the top down.
        let mut root = vec![BigRational::zero(); k + 1];
        root[k] = lead.clone();
        let two_lead = &lead + &lead;
        for i in 1..=k {
            let mut acc = self.0[n - i].clone();
            for j in 1..i {
                acc -= &root[k - j] * &root[k - (i - j)];
            }
            root[k - i] = acc / &two_lead;
        }
        let root = TPoly::new(root);
        (root.mul(&root) == *self).then_some(root)
    }
}

/// Integer coefficients and a common denominator.
fn integral(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    if den.is_one() {
        return (coeffs.iter().map(|c| c.numer().clone()).collect(), den);
    }
    (coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect(), den)
}

fn from_integral(coeffs: Vec<BigInt>, den: &BigInt) -> TPoly {
    TPoly::new(coeffs.into_iter().map(|c| BigRational::new(c, den.clone())).collect())
}

/// Primitive integer polynomial proportional to `coeffs`, positive leading coefficient.
fn primitive_part(coeffs: &[BigRational]) -> Vec<BigInt> {
    primitive_part_int(integral(coeffs).0)
}

fn primitive_part_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in v.iter().rev() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    let flip = v.last().is_some_and(Signed::is_negative);
    if !g.is_one() || flip {
        let g = if flip { -g } else { g };
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

/// Primes just below 2^61, found on demand and shared across calls.
fn gcd_prime(i: usize) -> u64 {
    static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());
    let mut primes = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    while primes.len() <= i {
        let mut n = primes.last().map_or((1 << 61) - 1, |&p| p - 2);
        while !is_probable_prime(&BigUint::from(n)) {
            n -= 2;
        }
        primes.push(n);
    }
    primes[i]
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn image_mod(v: &[BigInt], p: u64) -> Vec<u64> {
    let m = BigInt::from(p);
    v.iter().map(|c| c.mod_floor(&m).try_into().expect("reduced")).collect()
}

/// Monic gcd over F_p of polynomials with nonzero leading coefficients.
fn gcd_mod(mut x: Vec<u64>, mut y: Vec<u64>, p: u64) -> Vec<u64> {
    loop {
        while y.last() == Some(&0) {
            y.pop();
        }
        if y.is_empty() {
            let lc = inv_mod(*x.last().expect("nonzero"), p);
            return x.into_iter().map(|c| mul_mod(c, lc, p)).collect();
        }
        let db = y.len() - 1;
        let lead_inv = inv_mod(y[db], p);
        while x.len() > db {
            let top = x.pop().expect("nonempty");
            if top != 0 {
                let c = mul_mod(top, lead_inv, p);
                let shift = x.len() - db;
                for (j, &yj) in y[..db].iter().enumerate() {
                    x[shift + j] = (x[shift + j] + p - mul_mod(c, yj, p)) % p;
                }
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
}

/// Exact quotient over Z, or `None` if `b` does not divide `a`.
fn div_exact_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return rem.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let top = rem.pop().expect("nonempty");
        let (c, r) = top.div_rem(&b[db]);
        if !r.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b[..db].iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

/// Gcd of primitive integer polynomials: images modulo large primes are
/// combined by Chinese remaindering until the lift divides both inputs.
fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let gamma = a.last().expect("nonzero").gcd(b.last().expect("nonzero"));
    let mut best_deg = usize::MAX;
    let mut lift: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    for i in 0.. {
        let p = gcd_prime(i);
        let g = image_mod(std::slice::from_ref(&gamma), p)[0];
        let (x, y) = (image_mod(a, p), image_mod(b, p));
        if g == 0 || x.last() == Some(&0) || y.last() == Some(&0) {
            continue;
        }
        let image: Vec<u64> = gcd_mod(x, y, p).into_iter().map(|c| mul_mod(c, g, p)).collect();
        if image.len() == 1 {
            return vec![BigInt::one()];
        }
        let deg = image.len() - 1;
        if deg > best_deg {
            continue;
        }
        let pb = BigInt::from(p);
        if deg < best_deg {
            best_deg = deg;
            lift = image.into_iter().map(BigInt::from).collect();
            modulus = pb;
            lift = symmetric(lift, &modulus);
            continue;
        }
        // x = lift + M * ((r - lift) / M mod p)
        let m_inv = BigInt::from(inv_mod(image_mod(std::slice::from_ref(&modulus), p)[0], p));
        let mut stable = true;
        for (l, &r) in lift.iter_mut().zip(&image) {
            let diff = (BigInt::from(r) - &*l).mod_floor(&pb);
            if !diff.is_zero() {
                stable = false;
                *l += &modulus * (diff * &m_inv).mod_floor(&pb);
            }
        }
        modulus *= &pb;
        lift = symmetric(lift, &modulus);
        if stable {
            let candidate = primitive_part_int(lift.clone());
            if div_exact_int(a, &candidate).is_some() && div_exact_int(b, &candidate).is_some() {
                return candidate;
            }
        }
    }
    unreachable!("the prime supply is unbounded")
}

/// Representatives in (-M/2, M/2].
fn symmetric(v: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.into_iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.0, "t")
    }
}

/// Shared term printer for dense polynomials with rational coefficients,
/// highest degree first: `2*t^2 - 1/2*t + 3`.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigRational], var: &str) -> fmt::Result {
    if coeffs.iter().all(Zero::is_zero) {
        return write!(f, "0");
    }
    let mut first = true;
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            d => format!("{var}^{d}"),
        };
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    Ok(())
}

/// Element of Q(t), stored reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: TPoly,
    den: TPoly,
}

impl RatFun {
    /// Builds `num/den`, reducing to lowest terms. Returns `None` if `den` is zero.
    pub fn new(num: TPoly, den: TPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFun::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lc = den.leading().expect("nonzero").recip();
        Some(RatFun { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> Self {
        RatFun { num: TPoly::zero(), den: TPoly::one() }
    }

    pub fn one() -> Self {
        RatFun::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFun { num: TPoly::constant(c), den: TPoly::one() }
    }

    pub fn from_poly(p: TPoly) -> Self {
        RatFun { num: p, den: TPoly::one() }
    }

    pub fn t() -> Self {
        RatFun::from_poly(TPoly::t())
    }

    pub fn numer(&self) -> &TPoly {
        &self.num
    }

    pub fn denom(&self) -> &TPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The value as a rational constant, if it does not depend on `t`.
    pub fn as_constant(&self) -> Option<BigRational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFun::new(self.num.add(&other.num), self.den.clone()).expect("nonzero");
        }
        let g = self.den.gcd(&other.den);
        if g.degree() == Some(0) {
            // Coprime denominators: only factors of the new denominator can cancel.
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return RatFun::new(num, self.den.mul(&other.den)).expect("nonzero");
        }
        let d1 = self.den.divrem(&g).0;
        let d2 = other.den.divrem(&g).0;
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        RatFun::new(num, d1.mul(&other.den)).expect("nonzero")
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        // Both operands are reduced, so cancelling crosswise leaves a reduced product.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.divrem(&g1).0.mul(&other.num.divrem(&g2).0);
        let den = self.den.divrem(&g2).0.mul(&other.den.divrem(&g1).0);
        let lc = den.leading().expect("nonzero").recip();
        RatFun { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn inv(&self) -> Option<Self> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    /// (t − τ)-adic valuation; `None` for zero.
    pub fn valuation_at(&self, tau: &BigRational) -> Option<i64> {
        let vn = self.num.root_multiplicity(tau)? as i64;
        let vd = self.den.root_multiplicity(tau).expect("nonzero") as i64;
        Some(vn - vd)
    }

    /// Evaluates at `t = τ`; `None` when the denominator vanishes there.
    pub fn eval(&self, tau: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(tau);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(tau) / d)
    }

    /// Multiplies by `(t − τ)^k` for any integer `k`.
    pub fn mul_linear_power(&self, tau: &BigRational, k: i64) -> Self {
        let lin = TPoly::new(vec![-tau.clone(), BigRational::one()]);
        let mut pow = TPoly::one();
        for _ in 0..k.unsigned_abs() {
            pow = pow.mul(&lin);
        }
        if k >= 0 {
            RatFun::new(self.num.mul(&pow), self.den.clone()).expect("nonzero")
        } else {
            RatFun::new(self.num.clone(), self.den.mul(&pow)).expect("nonzero")
        }
    }

    pub fn sqrt(&self) -> Option<Self> {
        // den is monic, so a square root of den is monic too.
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        RatFun::new(n, d)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let simple_num = self.num.0.len() <= 1;
        if self.den == TPoly::one() {
            if simple_num {
                write!(f, "{}", self.num)
            } else {
                write!(f, "({})", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
fn int(n: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(n))
}
