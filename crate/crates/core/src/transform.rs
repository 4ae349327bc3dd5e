//! Value-preserving rewrites of finite continued fractions whose entries
//! are arbitrary rational functions in `X`.
//!
//! Entries need not be polynomials of positive degree: constants, zero and
//! negative-degree entries such as `a X^-1` are all allowed. The value of
//! `[e_0, ..., e_n]` is obtained by folding from the tail,
//! `v = e_n`, `v <- e_i + 1/v`.

use std::fmt;

use crate::algebra::{Coeff, Field, Poly};
use crate::cf::{expand_rational, ContinuedFraction};
use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// Reduced quotient `num/den` of polynomials in `X` with monic `den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyFraction {
    num: Poly,
    den: Poly,
}

impl PolyFraction {
    pub fn new(num: Poly, den: Poly) -> Result<PolyFraction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.field() != den.field() {
            return Err(Error::MixedFields(num.field(), den.field()));
        }
        let field = num.field();
        if num.is_zero() {
            return Ok(PolyFraction { num, den: Poly::one(field) });
        }
        let g = num.gcd(&den)?;
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(PolyFraction { num, den })
    }

    pub fn from_poly(p: Poly) -> PolyFraction {
        let den = Poly::one(p.field());
        PolyFraction { num: p, den }
    }

    pub fn constant(c: Coeff) -> PolyFraction {
        PolyFraction::from_poly(Poly::constant(c))
    }

    pub fn zero(field: Field) -> PolyFraction {
        PolyFraction::from_poly(Poly::zero(field))
    }

    pub fn one(field: Field) -> PolyFraction {
        PolyFraction::from_poly(Poly::one(field))
    }

    /// `c X^k` for any integer `k`.
    pub fn monomial(c: Coeff, k: i64) -> PolyFraction {
        let field = c.field();
        if k >= 0 {
            PolyFraction::from_poly(Poly::monomial(c, k as usize))
        } else {
            PolyFraction::new(Poly::constant(c), Poly::monomial(Coeff::one(field), (-k) as usize))
                .expect("nonzero denominator")
        }
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The entry as a polynomial, when its denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_constant().then_some(&self.num)
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn checked_add(&self, other: &PolyFraction) -> Result<PolyFraction> {
        let num = self.num.checked_mul(&other.den)?.checked_add(&other.num.checked_mul(&self.den)?)?;
        PolyFraction::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_sub(&self, other: &PolyFraction) -> Result<PolyFraction> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &PolyFraction) -> Result<PolyFraction> {
        PolyFraction::new(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn inv(&self) -> Result<PolyFraction> {
        PolyFraction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &PolyFraction) -> Result<PolyFraction> {
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> PolyFraction {
        PolyFraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Coeff) -> PolyFraction {
        PolyFraction::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// Laurent expansion in `X^-1` with `n_terms` guaranteed coefficients.
    pub fn to_series(&self, n_terms: usize) -> Result<LaurentSeries> {
        LaurentSeries::from_fraction(&self.num, &self.den, n_terms)
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A finite continued fraction with rational-function entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCF {
    field: Field,
    entries: Vec<PolyFraction>,
}

impl FormalCF {
    /// Rejects empty lists, mixed fields and lists whose fold is undefined.
    pub fn new(entries: Vec<PolyFraction>) -> Result<FormalCF> {
        let field = entries.first().ok_or(Error::EmptyContinuedFraction)?.field();
        if let Some(e) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::MixedFields(field, e.field()));
        }
        let cf = FormalCF { field, entries };
        cf.fold()?;
        Ok(cf)
    }

    pub fn from_polys(entries: Vec<Poly>) -> Result<FormalCF> {
        FormalCF::new(entries.into_iter().map(PolyFraction::from_poly).collect())
    }

    pub fn from_cf(cf: &ContinuedFraction) -> Result<FormalCF> {
        FormalCF::from_polys(cf.entries().to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[PolyFraction] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value of the continued fraction as a reduced rational function.
    pub fn fold(&self) -> Result<PolyFraction> {
        fold(&self.entries)
    }
}

impl fmt::Display for FormalCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

fn fold(entries: &[PolyFraction]) -> Result<PolyFraction> {
    let (last, rest) = entries.split_last().ok_or(Error::EmptyContinuedFraction)?;
    let mut v = last.clone();
    for (i, e) in rest.iter().enumerate().rev() {
        if v.is_zero() {
            return Err(Error::ZeroTail(i + 1));
        }
        v = e.checked_add(&v.inv()?)?;
    }
    Ok(v)
}

fn nonzero(c: &Coeff) -> Result<()> {
    if c.is_zero() {
        Err(Error::ZeroMultiplier)
    } else {
        Ok(())
    }
}

/// `lambda [e_0, e_1, e_2, ...] = [lambda e_0, e_1/lambda, lambda e_2, ...]`
/// with `lambda = C/B`; the value of the result is `(C/B)` times the value
/// of the input.
///
/// Equivalently, for any entries `a_i`, the results for `[C a_0, B a_1, ...]`
/// and `[B a_0, C a_1, ...]` satisfy `B [C a_0, B a_1, C a_2, ...] =
/// C [B a_0, C a_1, B a_2, ...]`.
pub fn multiply_lemma(cf: &FormalCF, b: &Coeff, c: &Coeff) -> Result<FormalCF> {
    nonzero(b)?;
    nonzero(c)?;
    let lambda = c.checked_div(b)?;
    alternate_scale(cf, &lambda)
}

fn alternate_scale(cf: &FormalCF, lambda: &Coeff) -> Result<FormalCF> {
    let inv = lambda.inv()?;
    let entries = cf.entries.iter().enumerate().map(|(i, e)| e.scale(if i % 2 == 0 { lambda } else { &inv })).collect();
    FormalCF::new(entries)
}

/// Returns a continued fraction whose value is `c * fold(cf) + d`.
pub fn affine_tail(cf: &FormalCF, c: &Coeff, d: &Coeff) -> Result<FormalCF> {
    nonzero(c)?;
    let mut out = alternate_scale(cf, c)?;
    out.entries[0] = out.entries[0].checked_add(&PolyFraction::constant(d.clone()))?;
    FormalCF::new(out.entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NegateVariant {
    /// `[.., A, B, beta] = [.., A - 1, 1, -B - 1, -beta]`
    First,
    /// `[.., A, B, beta] = [.., A + 1, -1, -B + 1, -beta]`
    Second,
}

/// Rewrites the pair `A = cf[i], B = cf[i + 1]` and negates the tail after it.
pub fn negate_lemma(cf: &FormalCF, i: usize, variant: NegateVariant) -> Result<FormalCF> {
    let len = cf.len();
    if i + 1 >= len {
        return Err(Error::IndexOutOfRange { index: i + 1, len });
    }
    let field = cf.field;
    let one = PolyFraction::one(field);
    let (a, b) = (&cf.entries[i], &cf.entries[i + 1]);
    let (new_a, mid, new_b) = match variant {
        NegateVariant::First => (a.checked_sub(&one)?, one.clone(), b.neg().checked_sub(&one)?),
        NegateVariant::Second => (a.checked_add(&one)?, one.neg(), b.neg().checked_add(&one)?),
    };
    let mut entries = cf.entries[..i].to_vec();
    entries.extend([new_a, mid, new_b]);
    if i + 2 < len {
        let tail = FormalCF::new(cf.entries[i + 2..].to_vec())?;
        entries.extend(affine_tail(&tail, &Coeff::from_i64(field, -1), &Coeff::zero(field))?.entries);
    }
    FormalCF::new(entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftVariant {
    /// `[A + x, beta] = [A, 1/x, -x^2 beta - x]`
    Head,
    /// `[A, x, beta] = [A + 1/x, -x^2 beta - x]`
    Split,
}

pub fn shift_corollary(cf: &FormalCF, x: &Coeff, variant: ShiftVariant) -> Result<FormalCF> {
    nonzero(x)?;
    let xf = PolyFraction::constant(x.clone());
    let inv_x = xf.inv()?;
    let (mut entries, tail_start) = match variant {
        ShiftVariant::Head => (vec![cf.entries[0].checked_sub(&xf)?, inv_x], 1),
        ShiftVariant::Split => {
            let given = cf.entries.get(1).ok_or(Error::IndexOutOfRange { index: 1, len: cf.len() })?;
            if *given != xf {
                return Err(Error::Precondition(format!("entry 1 is {given}, not {x}")));
            }
            (vec![cf.entries[0].checked_add(&inv_x)?], 2)
        }
    };
    if tail_start < cf.len() {
        let tail = FormalCF::new(cf.entries[tail_start..].to_vec())?;
        let c = -&(x * x);
        let d = -x;
        entries.extend(affine_tail(&tail, &c, &d)?.entries);
    }
    FormalCF::new(entries)
}

/// Folds and re-expands by the Euclidean algorithm.
pub fn canonicalize(cf: &FormalCF) -> Result<ContinuedFraction> {
    let v = cf.fold()?;
    expand_rational(v.numer(), v.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(Field::Rational, c)
    }

    fn pf(c: &[i64]) -> PolyFraction {
        PolyFraction::from_poly(q(c))
    }

    fn r(n: i64, d: i64) -> Coeff {
        Coeff::rational(n, d)
    }

    fn formal(entries: &[&[i64]]) -> FormalCF {
        FormalCF::new(entries.iter().map(|c| pf(c)).collect()).unwrap()
    }

    #[test]
    fn fold_examples() {
        let v = formal(&[&[0, 1], &[0, 1]]).fold().unwrap();
        assert_eq!(v, PolyFraction::new(q(&[1, 0, 1]), q(&[0, 1])).unwrap());
        let cf = FormalCF::new(vec![pf(&[]), PolyFraction::monomial(r(1, 1), -1)]).unwrap();
        assert_eq!(cf.fold().unwrap(), pf(&[0, 1]));
    }

    #[test]
    fn zero_tail_rejected() {
        let err = FormalCF::new(vec![pf(&[0, 1]), pf(&[])]).unwrap_err();
        assert_eq!(err, Error::ZeroTail(1));
        assert_eq!(FormalCF::new(vec![]).unwrap_err(), Error::EmptyContinuedFraction);
    }

    #[test]
    fn fraction_normalizes() {
        let f = PolyFraction::new(q(&[2, 2]), q(&[4, 4])).unwrap();
        assert_eq!(f, PolyFraction::constant(r(1, 2)));
        assert_eq!(f.to_string(), "1/2");
        let g = PolyFraction::monomial(r(3, 1), -2);
        assert_eq!(g.to_string(), "(3)/(X^2)");
        assert_eq!(g.degree(), Some(-2));
    }

    #[test]
    fn multiply_examples() {
        let cf = formal(&[&[0, 1], &[0, 1]]);
        let out = multiply_lemma(&cf, &r(1, 1), &r(2, 1)).unwrap();
        assert_eq!(out.fold().unwrap(), cf.fold().unwrap().scale(&r(2, 1)));
        let same = multiply_lemma(&cf, &r(7, 1), &r(7, 1)).unwrap();
        assert_eq!(same, cf);
        assert_eq!(multiply_lemma(&cf, &r(0, 1), &r(1, 1)).unwrap_err(), Error::ZeroMultiplier);
    }

    #[test]
    fn multiply_literal_identity() {
        // B [C a0, B a1, ...] = C [B a0, C a1, ...] on a five-entry list.
        let a = [q(&[1, 1]), q(&[0, 2]), q(&[-1, 0, 1]), q(&[3, 1]), q(&[0, 0, 0, 1])];
        let (b, c) = (r(3, 1), r(5, 1));
        let build = |even: &Coeff, odd: &Coeff| {
            FormalCF::from_polys(
                a.iter().enumerate().map(|(i, e)| e.scale(if i % 2 == 0 { even } else { odd })).collect(),
            )
            .unwrap()
        };
        let lhs = build(&c, &b).fold().unwrap().scale(&b);
        let rhs = build(&b, &c).fold().unwrap().scale(&c);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn negate_examples() {
        let cf = formal(&[&[0, 0, 1], &[0, 1], &[0, 1]]);
        let first = negate_lemma(&cf, 1, NegateVariant::First).unwrap();
        assert_eq!(first, formal(&[&[0, 0, 1], &[-1, 1], &[1], &[-1, -1]]));
        assert_eq!(first.fold().unwrap(), cf.fold().unwrap());
        let second = negate_lemma(&cf, 1, NegateVariant::Second).unwrap();
        assert_eq!(second, formal(&[&[0, 0, 1], &[1, 1], &[-1], &[1, -1]]));
        assert_eq!(second.fold().unwrap(), cf.fold().unwrap());
        let pair = formal(&[&[0, 1], &[0, 1]]);
        let out = negate_lemma(&pair, 0, NegateVariant::First).unwrap();
        assert_eq!(out, formal(&[&[-1, 1], &[1], &[-1, -1]]));
        assert!(matches!(negate_lemma(&pair, 1, NegateVariant::First), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn negate_with_tail() {
        let cf = formal(&[&[1, 1], &[2, 1], &[0, 3], &[1, 0, 1]]);
        for variant in [NegateVariant::First, NegateVariant::Second] {
            let out = negate_lemma(&cf, 0, variant).unwrap();
            assert_eq!(out.len(), 5);
            assert_eq!(out.fold().unwrap(), cf.fold().unwrap());
        }
    }

    #[test]
    fn shift_examples() {
        let cf = formal(&[&[1, 1], &[0, 1]]);
        let out = shift_corollary(&cf, &r(1, 1), ShiftVariant::Head).unwrap();
        assert_eq!(out, formal(&[&[0, 1], &[1], &[-1, -1]]));
        assert_eq!(out.fold().unwrap(), cf.fold().unwrap());

        let cf = formal(&[&[0, 1], &[2], &[0, 1]]);
        let out = shift_corollary(&cf, &r(2, 1), ShiftVariant::Split).unwrap();
        let expected =
            FormalCF::new(vec![PolyFraction::from_poly(Poly::from_rationals(&[rat(1, 2), rat(1, 1)])), pf(&[-2, -4])])
                .unwrap();
        assert_eq!(out, expected);
        assert_eq!(out.fold().unwrap(), cf.fold().unwrap());

        assert_eq!(shift_corollary(&cf, &r(0, 1), ShiftVariant::Head).unwrap_err(), Error::ZeroMultiplier);
        assert!(matches!(shift_corollary(&cf, &r(3, 1), ShiftVariant::Split), Err(Error::Precondition(_))));
    }

    #[test]
    fn shift_without_tail() {
        let cf = formal(&[&[2, 1]]);
        let out = shift_corollary(&cf, &r(3, 1), ShiftVariant::Head).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.fold().unwrap(), cf.fold().unwrap());
    }

    #[test]
    fn affine_examples() {
        let cf = formal(&[&[0, 1], &[0, 1]]);
        assert_eq!(affine_tail(&cf, &r(1, 1), &r(0, 1)).unwrap(), cf);
        let neg = affine_tail(&cf, &r(-1, 1), &r(0, 1)).unwrap();
        assert_eq!(neg.fold().unwrap(), PolyFraction::new(q(&[-1, 0, -1]), q(&[0, 1])).unwrap());
        let x = r(3, 2);
        let c = -&(&x * &x);
        let out = affine_tail(&cf, &c, &-&x).unwrap();
        let expected = cf.fold().unwrap().scale(&c).checked_add(&PolyFraction::constant(-&x)).unwrap();
        assert_eq!(out.fold().unwrap(), expected);
        assert_eq!(affine_tail(&cf, &r(0, 1), &r(1, 1)).unwrap_err(), Error::ZeroMultiplier);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let cf = formal(&[&[1, 0, 1], &[0, 2], &[-1, 1]]);
        let canon = canonicalize(&cf).unwrap();
        assert_eq!(canon.entries(), &[q(&[1, 0, 1]), q(&[0, 2]), q(&[-1, 1])]);
    }

    fn quadratic(b: &Coeff, c: &Coeff, d: &Coeff) -> PolyFraction {
        // (1/b) X^2 - (c/b^2) X + (c^2 - bd)/b^3
        let b2 = b * b;
        let b3 = &b2 * b;
        let p = Poly::new(Field::Rational, vec![&(&(c * c) - &(b * d)) / &b3, -&(c / &b2), b.inv().unwrap()]).unwrap();
        PolyFraction::from_poly(p)
    }

    #[test]
    fn collapse_form_series() {
        let (a, b, c, d) = (r(2, 1), r(3, 1), r(-1, 2), r(5, 1));
        let cf = FormalCF::new(vec![PolyFraction::monomial(a.clone(), -1), quadratic(&b, &c, &d)]).unwrap();
        let s = cf.fold().unwrap().to_series(6).unwrap();
        for (e, want) in [(-1, &a), (-2, &b), (-3, &c), (-4, &d)] {
            assert_eq!(s.coeff_at(e).unwrap(), *want, "X^{e}");
        }
    }

    #[test]
    fn collapse_first_quotients() {
        let (a, b, c, d) = (r(2, 1), r(3, 1), r(-1, 2), r(5, 1));
        let beta = pf(&[1, 1]);
        let cf = FormalCF::new(vec![PolyFraction::monomial(a.clone(), -1), quadratic(&b, &c, &d), beta]).unwrap();
        let canon = canonicalize(&cf).unwrap();
        let e = canon.entries();
        assert!(e[0].is_zero());
        let a2 = &a * &a;
        let disc = &(&b * &b) - &(&a * &c);
        let first = Poly::new(Field::Rational, vec![-&(&b / &a2), a.inv().unwrap()]).unwrap();
        assert_eq!(e[1], first);
        let lin = &(&a2 * &a) / &disc;
        let cst = &(&a2 * &(&(&(&a2 * &d) - &(&(&r(2, 1) * &a) * &(&b * &c))) + &(&(&b * &b) * &b))) / &(&disc * &disc);
        assert_eq!(e[2], Poly::new(Field::Rational, vec![cst, lin]).unwrap());

        let zero_a =
            FormalCF::new(vec![PolyFraction::zero(Field::Rational), quadratic(&b, &c, &d), pf(&[1, 1])]).unwrap();
        let canon = canonicalize(&zero_a).unwrap();
        assert!(canon.entries()[0].is_zero());
        assert_eq!(PolyFraction::from_poly(canon.entries()[1].clone()), quadratic(&b, &c, &d));
    }
}
