//! Truncated formal Laurent series in descending powers of `X`.
//!
//! A series stores the coefficients of `X^top, X^(top-1), ...` that are
//! known to be correct. Below the stored window a series is either exact
//! (every further coefficient is zero) or unknown. Arithmetic propagates
//! that boundary, so a coefficient reported by any operation is always a
//! true coefficient of the underlying infinite series.
//!
//! Precision is the number of guaranteed coefficients counted from the
//! leading nonzero term. Cancelling leading terms in a subtraction moves
//! the leading term down while the error boundary stays put, so the
//! precision drops by the cancellation depth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::algebra::{term_parts, Coeff, Field, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    /// Exponent of `coeffs[0]`. For an empty inexact series this is the
    /// highest exponent whose coefficient is unknown.
    top: i64,
    /// `coeffs[i]` is the coefficient of `X^(top - i)`; `coeffs[0] != 0`.
    coeffs: Vec<Coeff>,
    exact: bool,
}

impl LaurentSeries {
    fn normalized(field: Field, mut top: i64, coeffs: Vec<Coeff>, exact: bool) -> Self {
        let skip = coeffs.iter().take_while(|c| c.is_zero()).count();
        top -= skip as i64;
        let mut coeffs: Vec<Coeff> = coeffs.into_iter().skip(skip).collect();
        if exact {
            while coeffs.last().is_some_and(Coeff::is_zero) {
                coeffs.pop();
            }
            if coeffs.is_empty() {
                top = 0;
            }
        }
        LaurentSeries { field, top, coeffs, exact }
    }

    /// A series known exactly: `coeffs` at exponents `top, top-1, ...` and zero below.
    pub fn exact(field: Field, top: i64, coeffs: Vec<Coeff>) -> Self {
        LaurentSeries::normalized(field, top, coeffs, true)
    }

    /// A series whose only guaranteed coefficients are `coeffs`, at exponents
    /// `top, top-1, ...`.
    pub fn truncated(field: Field, top: i64, coeffs: Vec<Coeff>) -> Self {
        LaurentSeries::normalized(field, top, coeffs, false)
    }

    pub fn zero(field: Field) -> Self {
        LaurentSeries::exact(field, 0, Vec::new())
    }

    pub fn from_poly(p: &Poly) -> Self {
        let coeffs: Vec<Coeff> = p.coeffs().iter().rev().cloned().collect();
        LaurentSeries::exact(p.field(), p.degree_i64().max(0), coeffs)
    }

    /// Series of `num/den` with `n_terms` guaranteed coefficients.
    pub fn from_fraction(num: &Poly, den: &Poly, n_terms: usize) -> Result<Self> {
        let inv = LaurentSeries::from_poly(den).inverse_prec(n_terms)?;
        LaurentSeries::from_poly(num).checked_mul(&inv)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Exactly zero.
    pub fn is_zero(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }

    /// No coefficient is known; the value is only bounded above.
    pub fn is_indeterminate(&self) -> bool {
        !self.exact && self.coeffs.is_empty()
    }

    /// Exponent of the leading nonzero coefficient, if one is known.
    pub fn leading_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.top)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.coeffs.first()
    }

    /// Guaranteed coefficient count; `None` means exact (unbounded).
    pub fn precision(&self) -> Option<usize> {
        (!self.exact).then_some(self.coeffs.len())
    }

    /// Highest exponent whose coefficient is not guaranteed; `None` when exact.
    pub fn error_exponent(&self) -> Option<i64> {
        (!self.exact).then(|| self.top - self.coeffs.len() as i64)
    }

    /// Stored coefficients from the leading term down.
    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Coefficient of `X^e`, or `None` if it is not guaranteed.
    pub fn coeff_at(&self, e: i64) -> Option<Coeff> {
        if let Some(err) = self.error_exponent() {
            if e <= err {
                return None;
            }
        }
        if self.coeffs.is_empty() || e > self.top {
            return Some(Coeff::zero(self.field));
        }
        let idx = (self.top - e) as usize;
        Some(self.coeffs.get(idx).cloned().unwrap_or_else(|| Coeff::zero(self.field)))
    }

    /// Keeps at most `n` coefficients from the leading term.
    pub fn truncate(&self, n: usize) -> Self {
        if !self.exact && self.coeffs.len() <= n {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Coeff::zero(self.field));
        if self.coeffs.is_empty() {
            // Exact zero truncated is still zero; keep it exact.
            return self.clone();
        }
        LaurentSeries::truncated(self.field, self.top, coeffs)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        Ok(())
    }

    /// Upper bound on the exponent of any nonzero term.
    fn upper_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.error_exponent().unwrap_or(i64::MIN)
        } else {
            self.top
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let err = match (self.error_exponent(), other.error_exponent()) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
        };
        let tops = [self, other].iter().filter(|s| !s.coeffs.is_empty()).map(|s| s.top).max();
        let Some(hi) = tops else {
            return Ok(match err {
                None => LaurentSeries::zero(self.field),
                Some(e) => LaurentSeries::truncated(self.field, e, Vec::new()),
            });
        };
        let lo = match err {
            Some(e) => e + 1,
            None => [self, other]
                .iter()
                .filter(|s| !s.coeffs.is_empty())
                .map(|s| s.top - s.coeffs.len() as i64 + 1)
                .min()
                .unwrap(),
        };
        if hi < lo {
            return Ok(LaurentSeries::truncated(self.field, err.unwrap(), Vec::new()));
        }
        let coeffs: Vec<Coeff> =
            (lo..=hi).rev().map(|e| &self.coeff_at(e).unwrap() + &other.coeff_at(e).unwrap()).collect();
        let s = LaurentSeries::normalized(self.field, hi, coeffs, err.is_none());
        if s.coeffs.is_empty() && !s.exact {
            return Ok(LaurentSeries::truncated(self.field, err.unwrap(), Vec::new()));
        }
        Ok(s)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            field: self.field,
            top: self.top,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            exact: self.exact,
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentSeries::zero(self.field));
        }
        let err = match (self.error_exponent(), other.error_exponent()) {
            (None, None) => None,
            (a, b) => {
                let ea = a.map(|e| e.saturating_add(other.upper_bound())).unwrap_or(i64::MIN);
                let eb = b.map(|e| e.saturating_add(self.upper_bound())).unwrap_or(i64::MIN);
                Some(ea.max(eb))
            }
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(LaurentSeries::truncated(self.field, err.unwrap(), Vec::new()));
        }
        let top = self.top + other.top;
        let len = match err {
            Some(e) => (top - e).max(0) as usize,
            None => self.coeffs.len() + other.coeffs.len() - 1,
        };
        let mut coeffs = vec![Coeff::zero(self.field); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(LaurentSeries::normalized(self.field, top, coeffs, err.is_none()))
    }

    /// Multiplicative inverse with `n` guaranteed coefficients.
    pub fn inverse_prec(&self, n: usize) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let lead =
            self.leading_coeff().ok_or_else(|| Error::InsufficientPrecision("leading coefficient unknown".into()))?;
        if let Some(p) = self.precision() {
            if n > p {
                return Err(Error::InsufficientPrecision(format!(
                    "requested {n} coefficients from a series with precision {p}"
                )));
            }
        }
        let lead_inv = lead.inv()?;
        if self.exact && self.coeffs.len() == 1 {
            return Ok(LaurentSeries::exact(self.field, -self.top, vec![lead_inv]));
        }
        if self.field == Field::Rational {
            let out = rational_inverse(&self.coeffs, n);
            return Ok(LaurentSeries::truncated(self.field, -self.top, out));
        }
        let zero = Coeff::zero(self.field);
        let mut out: Vec<Coeff> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(lead_inv.clone());
                continue;
            }
            let mut acc = Coeff::zero(self.field);
            for j in 1..=k {
                let a = self.coeffs.get(j).unwrap_or(&zero);
                if !a.is_zero() {
                    acc = &acc + &(a * &out[k - j]);
                }
            }
            out.push(-(&acc * &lead_inv));
        }
        Ok(LaurentSeries::truncated(self.field, -self.top, out))
    }

    /// Inverse at the input's own precision. Exact inputs other than
    /// monomials have infinite expansions and need [`inverse_prec`](Self::inverse_prec).
    pub fn inverse(&self) -> Result<Self> {
        match self.precision() {
            Some(p) => self.inverse_prec(p),
            None if self.coeffs.len() == 1 => self.inverse_prec(1),
            None if self.coeffs.is_empty() => Err(Error::ZeroSeries),
            None => Err(Error::InsufficientPrecision("exact non-monomial series: use inverse_prec".into())),
        }
    }

    /// The part with nonnegative exponents; requires all of it to be guaranteed.
    pub fn polynomial_part(&self) -> Result<Poly> {
        if let Some(err) = self.error_exponent() {
            if err >= 0 {
                return Err(Error::InsufficientPrecision(format!("coefficient of X^{err} is not guaranteed")));
            }
        }
        if self.coeffs.is_empty() || self.top < 0 {
            return Ok(Poly::zero(self.field));
        }
        let asc: Vec<Coeff> = (0..=self.top).map(|e| self.coeff_at(e).unwrap()).collect();
        Poly::new(self.field, asc)
    }

    /// Rebuilds the series over another field, mapping each stored coefficient.
    pub fn try_map(&self, field: Field, mut f: impl FnMut(&Coeff) -> Result<Coeff>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::MixedFields(field, self.field));
        }
        Ok(LaurentSeries::normalized(field, self.top, coeffs, self.exact))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return match self.error_exponent() {
                None => write!(f, "0"),
                Some(e) => write!(f, "O(X^{e})"),
            };
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
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
            let mono = match self.top - i as i64 {
                0 => None,
                1 => Some("X".to_string()),
                e => Some(format!("X^{e}")),
            };
            match mono {
                None => write!(f, "{mag}")?,
                Some(m) if mag == "1" => write!(f, "{m}")?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        if let Some(e) = self.error_exponent() {
            write!(f, " + O(X^{e})")?;
        }
        Ok(())
    }
}

/// First `n` coefficients of `1/s` over Q without intermediate gcds: with
/// `s = S/L` integral, `N_k = -sum_{j>=1} S_j N_{k-j} S_0^(j-1)` and the
/// coefficient is `L N_k / S_0^(k+1)`.
fn rational_inverse(coeffs: &[Coeff], n: usize) -> Vec<Coeff> {
    let rats: Vec<&BigRational> = coeffs.iter().take(n).map(|c| c.as_rational().expect("rational")).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let s0 = &ints[0];
    let mut powers = vec![BigInt::one()];
    for j in 1..n {
        let next = &powers[j - 1] * s0;
        powers.push(next);
    }
    let mut nums: Vec<BigInt> = Vec::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let nk = if k == 0 {
            BigInt::one()
        } else {
            let mut acc = BigInt::zero();
            for j in 1..=k.min(ints.len() - 1) {
                if !ints[j].is_zero() {
                    acc += &ints[j] * &nums[k - j] * &powers[j - 1];
                }
            }
            -acc
        };
        out.push(Coeff::Rational(BigRational::new(&lcm * &nk, &powers[k] * s0)));
        nums.push(nk);
    }
    out
}

/// Power series of `sqrt(d)` with `n_terms` guaranteed coefficients, by
/// matching coefficients of the square term by term.
///
/// The branch is the one whose leading coefficient is the principal square
/// root of `lc(d)`; for monic `d` that is the monic branch. A perfect square
/// comes back as an exact series.
pub fn series_sqrt(d: &Poly, n_terms: usize) -> Result<LaurentSeries> {
    let field = d.field();
    if field.characteristic() == 2 {
        return Err(Error::Characteristic2);
    }
    let Some(deg) = d.degree() else {
        return Ok(LaurentSeries::zero(field));
    };
    if deg % 2 == 1 {
        return Err(Error::OddDegree(deg));
    }
    let k = deg / 2;
    let lead = d.leading().unwrap().sqrt().ok_or(Error::NonSquareLeading)?;
    let two_lead_inv = (&lead + &lead).inv()?;
    let n = n_terms.max(k + 1);
    // root[i] is the coefficient of X^(k - i).
    let mut root: Vec<Coeff> = Vec::with_capacity(n);
    root.push(lead);
    for i in 1..n {
        let mut acc = if i <= deg { d.coeff(deg - i) } else { Coeff::zero(field) };
        for j in 1..i {
            let prod = &root[j] * &root[i - j];
            acc = &acc - &prod;
        }
        root.push(&acc * &two_lead_inv);
    }
    let poly_part = Poly::new(field, root[..=k].iter().rev().cloned().collect())?;
    if &poly_part * &poly_part == *d {
        return Ok(LaurentSeries::from_poly(&poly_part));
    }
    root.truncate(n_terms.max(1));
    Ok(LaurentSeries::truncated(field, k as i64, root))
}

/// Cantor's product `(1 + X^-1)(1 + X^-3)(1 + X^-9)...` to `n_terms`
/// coefficients (exponents `0, -1, ..., -(n_terms - 1)`).
pub fn g3_series(n_terms: usize, field: Field) -> LaurentSeries {
    let n = n_terms.max(1);
    let mut acc = vec![Coeff::zero(field); n];
    acc[0] = Coeff::one(field);
    let mut step = 1usize;
    while step < n {
        // Multiply by (1 + X^-step): new[i] = old[i] + old[i - step].
        for i in (step..n).rev() {
            let shifted = acc[i - step].clone();
            acc[i] = &acc[i] + &shifted;
        }
        step *= 3;
    }
    LaurentSeries::truncated(field, 0, acc)
}
