//! Reduction modulo a prime `p` (Q to F_p) and specialisation `t -> tau`
//! (Q(t) to Q), and the comparison of reduced convergents with the
//! convergents of the reduced series.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::rational::{denominator_primes, reduce_rational, valuation};
use crate::algebra::{Coeff, Field, Poly, RatFun};
use crate::cf::{continuants, expand_rational, expand_series, expand_surd, ContinuedFraction, Convergent, Termination};
use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// Where coefficients are sent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// Q to F_p.
    Prime(u64),
    /// Q(t) to Q by `t -> tau`.
    Point(BigRational),
}

impl Target {
    pub fn source_field(&self) -> Field {
        match self {
            Target::Prime(_) => Field::Rational,
            Target::Point(_) => Field::RatFun,
        }
    }

    pub fn target_field(&self) -> Result<Field> {
        match self {
            Target::Prime(p) => Field::prime(*p),
            Target::Point(_) => Ok(Field::Rational),
        }
    }

    fn check_source(&self, field: Field) -> Result<()> {
        if field == self.source_field() {
            Ok(())
        } else {
            let expected = match self {
                Target::Prime(_) => "Q",
                Target::Point(_) => "Q(t)",
            };
            Err(Error::WrongField { expected, found: field })
        }
    }

    /// Valuation of a coefficient at the prime `p` or at `t = tau`; `None` for zero.
    fn valuation(&self, c: &Coeff) -> Option<i64> {
        match (self, c) {
            (Target::Prime(p), Coeff::Rational(q)) => valuation(q, *p),
            (Target::Point(tau), Coeff::RatFun(f)) => f.valuation_at(tau),
            _ => unreachable!("source field checked"),
        }
    }

    /// Multiplies by `p^k` or `(t - tau)^k`.
    fn shift(&self, c: &Coeff, k: i64) -> Coeff {
        match (self, c) {
            (Target::Prime(p), Coeff::Rational(q)) => {
                let pk = BigRational::from_integer(BigInt::from(*p).pow(k.unsigned_abs() as u32));
                Coeff::Rational(if k >= 0 { q * pk } else { q / pk })
            }
            (Target::Point(tau), Coeff::RatFun(f)) => Coeff::RatFun(f.mul_linear_power(tau, k)),
            _ => unreachable!("source field checked"),
        }
    }

    fn map(&self, c: &Coeff) -> Option<Coeff> {
        match (self, c) {
            (Target::Prime(p), Coeff::Rational(q)) => {
                reduce_rational(q, *p).map(|v| Coeff::from_i64(Field::Prime(*p), v as i64))
            }
            (Target::Point(tau), Coeff::RatFun(f)) => f.eval(tau).map(Coeff::Rational),
            _ => unreachable!("source field checked"),
        }
    }

    fn uniformizer(&self) -> String {
        match self {
            Target::Prime(p) => p.to_string(),
            Target::Point(tau) if tau.is_zero() => "t".to_string(),
            Target::Point(tau) => format!("(t - {tau})"),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Prime(p) => write!(f, "p = {p}"),
            Target::Point(tau) => write!(f, "t = {tau}"),
        }
    }
}

/// A coefficient that does not survive the map: `p` divides its
/// denominator, or its denominator vanishes at `tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadReduction {
    /// What was being reduced, e.g. `"a_2"` or `"D"`.
    pub object: String,
    /// Exponent of `X` carrying the offending coefficient.
    pub exponent: i64,
    pub coefficient: Coeff,
    pub target: Target,
}

impl fmt::Display for BadReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: coefficient {} of X^{} has bad reduction at {}",
            self.object, self.coefficient, self.exponent, self.target
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction<T> {
    Good(T),
    Bad(BadReduction),
}

impl<T> Reduction<T> {
    pub fn good(self) -> Option<T> {
        match self {
            Reduction::Good(v) => Some(v),
            Reduction::Bad(_) => None,
        }
    }

    pub fn is_good(&self) -> bool {
        matches!(self, Reduction::Good(_))
    }

    pub fn bad(&self) -> Option<&BadReduction> {
        match self {
            Reduction::Good(_) => None,
            Reduction::Bad(b) => Some(b),
        }
    }
}

pub trait Reducible {
    type Output;
    fn reduce(&self, target: &Target) -> Result<Self::Output>;
}

fn reduce_poly_named(poly: &Poly, target: &Target, object: &str) -> Result<Reduction<Poly>> {
    target.check_source(poly.field())?;
    let field = target.target_field()?;
    let mut out = Vec::with_capacity(poly.coeffs().len());
    for (i, c) in poly.coeffs().iter().enumerate() {
        match target.map(c) {
            Some(v) => out.push(v),
            None => {
                return Ok(Reduction::Bad(BadReduction {
                    object: object.to_string(),
                    exponent: i as i64,
                    coefficient: c.clone(),
                    target: target.clone(),
                }))
            }
        }
    }
    Ok(Reduction::Good(Poly::new(field, out)?))
}

impl Reducible for Poly {
    type Output = Reduction<Poly>;
    fn reduce(&self, target: &Target) -> Result<Reduction<Poly>> {
        reduce_poly_named(self, target, "polynomial")
    }
}

impl Reducible for LaurentSeries {
    type Output = Reduction<LaurentSeries>;
    fn reduce(&self, target: &Target) -> Result<Reduction<LaurentSeries>> {
        target.check_source(self.field())?;
        let field = target.target_field()?;
        if let Some(top) = self.leading_exponent() {
            for (i, c) in self.coeffs().iter().enumerate() {
                if target.map(c).is_none() {
                    return Ok(Reduction::Bad(BadReduction {
                        object: "series".to_string(),
                        exponent: top - i as i64,
                        coefficient: c.clone(),
                        target: target.clone(),
                    }));
                }
            }
        }
        Ok(Reduction::Good(self.try_map(field, |c| Ok(target.map(c).unwrap()))?))
    }
}

/// Per-entry: a partial quotient may blow up although the series does not.
impl Reducible for ContinuedFraction {
    type Output = Vec<Reduction<Poly>>;
    fn reduce(&self, target: &Target) -> Result<Vec<Reduction<Poly>>> {
        self.entries().iter().enumerate().map(|(h, a)| reduce_poly_named(a, target, &format!("a_{h}"))).collect()
    }
}

pub fn reduce_mod_p<T: Reducible>(obj: &T, p: u64) -> Result<T::Output> {
    obj.reduce(&Target::Prime(p))
}

pub fn specialize<T: Reducible>(obj: &T, tau: &BigRational) -> Result<T::Output> {
    obj.reduce(&Target::Point(tau.clone()))
}

/// `c x_h, c y_h` reduced, where `c = pi^(-valuation)` is the least power of
/// the uniformizer `pi` making both integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedConvergent {
    pub index: usize,
    pub valuation: i64,
    pub x: Poly,
    pub y: Poly,
}

/// One collapse class: consecutive source convergents with equal reduced value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedConvergent {
    pub lo: usize,
    pub hi: usize,
    /// Normalizer exponent of the convergent `lo`; the clearing factor is
    /// `pi^(-valuation)`.
    pub valuation: i64,
    pub normalizer: String,
    pub x: Poly,
    pub y: Poly,
}

impl ReducedConvergent {
    pub fn is_collapse(&self) -> bool {
        self.hi > self.lo
    }

    /// `x/y` in lowest terms.
    pub fn fraction(&self) -> (Poly, Poly) {
        lowest_terms(&self.x, &self.y)
    }
}

fn lowest_terms(x: &Poly, y: &Poly) -> (Poly, Poly) {
    match x.gcd(y) {
        Ok(g) if !g.is_constant() => (x.div_exact(&g).unwrap(), y.div_exact(&g).unwrap()),
        _ => (x.clone(), y.clone()),
    }
}

fn same_value(a: (&Poly, &Poly), b: (&Poly, &Poly)) -> bool {
    a.0 * b.1 == b.0 * a.1
}

fn normalizer_label(target: &Target, valuation: i64) -> String {
    let k = -valuation;
    match k {
        0 => "1".to_string(),
        1 => target.uniformizer(),
        _ => format!("{}^{k}", target.uniformizer()),
    }
}

pub fn normalize_convergent(conv: &Convergent, target: &Target) -> Result<NormalizedConvergent> {
    let field = conv.x.field();
    target.check_source(field)?;
    let v = conv
        .x
        .coeffs()
        .iter()
        .chain(conv.y.coeffs())
        .filter_map(|c| target.valuation(c))
        .min()
        .ok_or(Error::BothZero)?;
    let scale = |p: &Poly| -> Result<Poly> {
        let coeffs = p.coeffs().iter().map(|c| target.shift(c, -v)).collect();
        let scaled = Poly::new(field, coeffs)?;
        match reduce_poly_named(&scaled, target, "normalized continuant")? {
            Reduction::Good(r) => Ok(r),
            Reduction::Bad(b) => Err(Error::Precondition(b.to_string())),
        }
    };
    Ok(NormalizedConvergent { index: conv.index, valuation: v, x: scale(&conv.x)?, y: scale(&conv.y)? })
}

/// Merges consecutive equal values into collapse classes.
pub fn collapse_classes(normalized: &[NormalizedConvergent], target: &Target) -> Vec<ReducedConvergent> {
    let mut out: Vec<ReducedConvergent> = Vec::new();
    for n in normalized {
        if let Some(last) = out.last_mut() {
            if same_value((&last.x, &last.y), (&n.x, &n.y)) {
                last.hi = n.index;
                continue;
            }
        }
        out.push(ReducedConvergent {
            lo: n.index,
            hi: n.index,
            valuation: n.valuation,
            normalizer: normalizer_label(target, n.valuation),
            x: n.x.clone(),
            y: n.y.clone(),
        });
    }
    out
}

/// What the theorem is checked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremInput {
    /// `sqrt(D)` for monic `D` of even degree.
    Sqrt(Poly),
    Series(LaurentSeries),
    /// `x / y`.
    Rational(Poly, Poly),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The reduced series does not exist.
    BadReduction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub target: Target,
    pub verdict: Verdict,
    /// Source quotients, for reference.
    pub source: Option<ContinuedFraction>,
    /// Reduced source convergents, deduplicated.
    pub reduced: Vec<ReducedConvergent>,
    /// Expansion of the reduced series.
    pub direct_cf: Option<ContinuedFraction>,
    pub direct: Vec<Convergent>,
    /// Source partial quotients that blow up.
    pub blowups: Vec<BadReduction>,
    /// Why the reduced series does not exist, when it does not.
    pub bad: Option<String>,
    /// Number of leading classes compared and found equal.
    pub matched: usize,
    /// First mismatching class, if any.
    pub mismatch: Option<usize>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn collapse_classes(&self) -> Vec<(usize, usize)> {
        self.reduced.iter().filter(|c| c.is_collapse()).map(|c| (c.lo, c.hi)).collect()
    }

    /// `x_i y_{i+1} - x_{i+1} y_i` for consecutive classes, each in lowest
    /// terms; every entry is a nonzero constant when the theorem holds.
    pub fn boundary_determinants(&self) -> Vec<Poly> {
        self.reduced
            .windows(2)
            .map(|w| {
                let (x0, y0) = w[0].fraction();
                let (x1, y1) = w[1].fraction();
                &(&x0 * &y1) - &(&x1 * &y0)
            })
            .collect()
    }
}

fn bad_report(target: &Target, source: Option<ContinuedFraction>, reason: String) -> ReductionReport {
    ReductionReport {
        target: target.clone(),
        verdict: Verdict::BadReduction,
        source,
        reduced: Vec::new(),
        direct_cf: None,
        direct: Vec::new(),
        blowups: Vec::new(),
        bad: Some(reason),
        matched: 0,
        mismatch: None,
    }
}

/// Expands the source to `depth` quotients, reduces and deduplicates its
/// convergents, expands the reduced object independently, and compares.
///
/// Pass means: every class that the reduced expansion also reaches agrees,
/// and a complete reduced expansion is not shorter than the class list.
/// `matched` says how many classes were actually compared.
pub fn verify_reduction_theorem(input: &TheoremInput, target: &Target, depth: usize) -> Result<ReductionReport> {
    let (source, reduced_input) = match input {
        TheoremInput::Sqrt(d) => {
            target.check_source(d.field())?;
            let (cf, _) = expand_surd(d, depth)?;
            (cf, good_or_reason(reduce_poly_named(d, target, "D")?).map(TheoremInput::Sqrt))
        }
        TheoremInput::Series(f) => {
            target.check_source(f.field())?;
            (expand_series(f, depth), good_or_reason(f.reduce(target)?).map(TheoremInput::Series))
        }
        TheoremInput::Rational(x, y) => {
            target.check_source(x.field())?;
            let cf = truncate_cf(expand_rational(x, y)?, depth);
            (cf, reduce_fraction(x, y, target)?)
        }
    };
    let blowups: Vec<BadReduction> = source.reduce(target)?.into_iter().filter_map(|r| r.bad().cloned()).collect();

    let reduced_input = match reduced_input {
        Ok(r) => r,
        Err(reason) => {
            let mut report = bad_report(target, Some(source), reason);
            report.blowups = blowups;
            return Ok(report);
        }
    };

    let direct_cf = match &reduced_input {
        TheoremInput::Sqrt(d) => match expand_surd(d, depth) {
            Ok((cf, _)) => cf,
            Err(
                e @ (Error::Characteristic2 | Error::OddDegree(_) | Error::NotMonic | Error::DegreeTooSmall { .. }),
            ) => {
                let mut report = bad_report(target, Some(source), format!("reduced square root: {e}"));
                report.blowups = blowups;
                return Ok(report);
            }
            Err(e) => return Err(e),
        },
        TheoremInput::Series(f) => expand_series(f, depth),
        TheoremInput::Rational(x, y) => truncate_cf(expand_rational(x, y)?, depth),
    };

    let normalized = continuants(source.field(), source.entries())
        .iter()
        .map(|c| normalize_convergent(c, target))
        .collect::<Result<Vec<_>>>()?;
    let reduced = collapse_classes(&normalized, target);
    let direct = continuants(direct_cf.field(), direct_cf.entries());

    let overlap = reduced.len().min(direct.len());
    let mismatch = (0..overlap).find(|&i| !same_value((&reduced[i].x, &reduced[i].y), (&direct[i].x, &direct[i].y)));
    let too_short = direct_cf.termination() == Termination::Complete && reduced.len() > direct.len();
    let verdict = if mismatch.is_none() && !too_short { Verdict::Pass } else { Verdict::Fail };
    Ok(ReductionReport {
        target: target.clone(),
        verdict,
        source: Some(source),
        matched: mismatch.unwrap_or(overlap),
        mismatch: mismatch.or(too_short.then_some(direct.len())),
        reduced,
        direct_cf: Some(direct_cf),
        direct,
        blowups,
        bad: None,
    })
}

fn good_or_reason<T>(r: Reduction<T>) -> std::result::Result<T, String> {
    match r {
        Reduction::Good(v) => Ok(v),
        Reduction::Bad(b) => Err(b.to_string()),
    }
}

/// Reduction of the value `x/y`, which exists iff, with `x, y` coprime and
/// `y` scaled to be primitive, `x` is integral and `lc(y)` is a unit.
fn reduce_fraction(x: &Poly, y: &Poly, target: &Target) -> Result<std::result::Result<TheoremInput, String>> {
    let g = x.gcd(y)?;
    let (x, y) = (x.div_exact(&g)?, y.div_exact(&g)?);
    let v = y.coeffs().iter().filter_map(|c| target.valuation(c)).min().ok_or(Error::DivisionByZero)?;
    let (x, y) = (shift_poly(&x, target, -v)?, shift_poly(&y, target, -v)?);
    if target.valuation(y.leading().expect("nonzero")) != Some(0) {
        return Ok(Err(format!(
            "the leading coefficient of the primitive denominator vanishes at {target}, so the expansion is not integral"
        )));
    }
    let xr = match reduce_poly_named(&x, target, "numerator")? {
        Reduction::Good(r) => r,
        Reduction::Bad(b) => return Ok(Err(b.to_string())),
    };
    let yr = reduce_poly_named(&y, target, "denominator")?.good().expect("primitive");
    Ok(Ok(TheoremInput::Rational(xr, yr)))
}

fn truncate_cf(cf: ContinuedFraction, depth: usize) -> ContinuedFraction {
    if cf.len() <= depth {
        return cf;
    }
    ContinuedFraction::from_parts(cf.field(), cf.entries()[..depth].to_vec(), cf.source(), Termination::Limit)
}

/// For each `h < up_to`, the primes dividing a coefficient denominator of `a_h`.
pub fn blowup_primes(cf: &ContinuedFraction, up_to: usize) -> Result<BTreeMap<usize, BTreeSet<BigUint>>> {
    if cf.field() != Field::Rational {
        return Err(Error::NonRationalCoefficients(cf.field()));
    }
    Ok(cf
        .entries()
        .iter()
        .take(up_to)
        .enumerate()
        .map(|(h, a)| {
            let primes = a.coeffs().iter().flat_map(|c| denominator_primes(c.as_rational().unwrap())).collect();
            (h, primes)
        })
        .collect())
}

/// Rational coefficients of `p`, scaled by `pi^k`; used to probe normalizer minimality.
pub fn shift_poly(p: &Poly, target: &Target, k: i64) -> Result<Poly> {
    target.check_source(p.field())?;
    Poly::new(p.field(), p.coeffs().iter().map(|c| target.shift(c, k)).collect())
}

/// `t - tau` as a coefficient of Q(t).
pub fn linear_factor(tau: &BigRational) -> Coeff {
    Coeff::RatFun(RatFun::t().sub(&RatFun::from_rational(tau.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::series::g3_series;

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(Field::Rational, c)
    }

    fn nonperiodic() -> Poly {
        q(&[2, 2, 3, -2, 1])
    }

    #[test]
    fn coefficientwise_residues() {
        let f7 = Field::prime(7).unwrap();
        let r = reduce_mod_p(&nonperiodic(), 7).unwrap().good().unwrap();
        assert_eq!(r, Poly::from_ints(f7, &[2, 2, 3, 5, 1]));
    }

    #[test]
    fn quotient_blowups() {
        let (cf, _) = expand_surd(&nonperiodic(), 7).unwrap();
        let at = |p: u64| reduce_mod_p(&cf, p).unwrap();
        assert!(!at(3)[2].is_good());
        assert!(!at(7)[2].is_good());
        assert!(!at(5)[5].is_good());
        assert!(!at(11)[6].is_good());
        assert!(at(5)[2].is_good());
        let bad = at(3)[2].bad().unwrap().clone();
        assert_eq!(bad.object, "a_2");
    }

    #[test]
    fn blowup_map() {
        let (cf, _) = expand_surd(&nonperiodic(), 7).unwrap();
        let map = blowup_primes(&cf, 7).unwrap();
        let has = |h: usize, p: u32| map[&h].contains(&BigUint::from(p));
        assert!(has(2, 3) && has(2, 7) && has(5, 5) && has(6, 11));
        assert!(map[&0].is_empty());
    }

    #[test]
    fn specialise_coefficients() {
        let t = RatFun::t();
        let one_minus_2t = Coeff::RatFun(RatFun::one().sub(&t.add(&t)));
        let p = Poly::new(Field::RatFun, vec![one_minus_2t]).unwrap();
        let r = specialize(&p, &rat(0, 1)).unwrap().good().unwrap();
        assert_eq!(r, q(&[1]));
        let inv_t = Poly::new(Field::RatFun, vec![Coeff::RatFun(t.inv().unwrap())]).unwrap();
        assert!(!specialize(&inv_t, &rat(0, 1)).unwrap().is_good());
        assert!(reduce_mod_p(&inv_t, 5).is_err());
    }

    #[test]
    fn constructed_normalizer() {
        let x = Poly::from_rationals(&[rat(1, 1), rat(1, 7)]);
        let y = Poly::from_rationals(&[rat(0, 1), rat(1, 49)]);
        let conv = Convergent { index: 0, x, y };
        let n = normalize_convergent(&conv, &Target::Prime(7)).unwrap();
        let f7 = Field::prime(7).unwrap();
        assert_eq!(n.valuation, -2);
        assert!(n.x.is_zero());
        assert_eq!(n.y, Poly::x(f7));
        assert_eq!(normalizer_label(&Target::Prime(7), -2), "7^2");
    }

    #[test]
    fn integral_convergent_has_unit_normalizer() {
        let conv = Convergent { index: 0, x: q(&[1, 1]), y: q(&[2]) };
        let n = normalize_convergent(&conv, &Target::Prime(5)).unwrap();
        assert_eq!(n.valuation, 0);
    }

    #[test]
    fn nonperiodic_mod7_collapses() {
        let report = verify_reduction_theorem(&TheoremInput::Sqrt(nonperiodic()), &Target::Prime(7), 9).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.collapse_classes().iter().any(|&(lo, hi)| lo <= 2 && hi >= 2 && hi > lo));
        for det in report.boundary_determinants() {
            assert_eq!(det.degree(), Some(0));
        }
    }

    #[test]
    fn periodic_mod5_no_collapse() {
        let d = q(&[1, 2, 3, -2, 1]);
        let report = verify_reduction_theorem(&TheoremInput::Sqrt(d), &Target::Prime(5), 10).unwrap();
        assert!(report.passed());
        assert!(report.collapse_classes().is_empty());
        assert_eq!(report.matched, 10);
    }

    #[test]
    fn g3_mod3_no_collapse() {
        let f = g3_series(80, Field::Rational);
        let report = verify_reduction_theorem(&TheoremInput::Series(f), &Target::Prime(3), 20).unwrap();
        assert!(report.passed());
        assert!(report.collapse_classes().is_empty());
        assert_eq!(report.matched, 20);
        assert!(report.blowups.is_empty());
    }

    #[test]
    fn mod2_is_bad() {
        let report = verify_reduction_theorem(&TheoremInput::Sqrt(nonperiodic()), &Target::Prime(2), 5).unwrap();
        assert_eq!(report.verdict, Verdict::BadReduction);
    }

    #[test]
    fn normalizer_is_minimal() {
        let target = Target::Prime(7);
        let (cf, _) = expand_surd(&nonperiodic(), 9).unwrap();
        for conv in continuants(Field::Rational, cf.entries()) {
            let n = normalize_convergent(&conv, &target).unwrap();
            assert!(!(n.x.is_zero() && n.y.is_zero()));
            let looser_x = shift_poly(&conv.x, &target, -n.valuation - 1).unwrap();
            let looser_y = shift_poly(&conv.y, &target, -n.valuation - 1).unwrap();
            let bad = !looser_x.reduce(&target).unwrap().is_good() || !looser_y.reduce(&target).unwrap().is_good();
            assert!(bad, "normalizer of r_{} is not minimal", conv.index);
        }
    }

    #[test]
    fn rational_input() {
        let x = Poly::from_rationals(&[rat(1, 1), rat(0, 1), rat(1, 1), rat(1, 3)]);
        let y = q(&[1, 1, 1]);
        let report = verify_reduction_theorem(&TheoremInput::Rational(x, y), &Target::Prime(5), 10).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn rational_input_integrality() {
        // 1/(5X + 1) has a pole at -1/5, inside the 5-adic disc.
        let pole = TheoremInput::Rational(q(&[1]), q(&[1, 5]));
        let report = verify_reduction_theorem(&pole, &Target::Prime(5), 4).unwrap();
        assert_eq!(report.verdict, Verdict::BadReduction);
        // A common factor with a non-integral root cancels first.
        let common = Poly::from_rationals(&[rat(1, 5), rat(1, 1)]);
        let x = &q(&[1, 1]) * &common;
        let report = verify_reduction_theorem(&TheoremInput::Rational(x, common), &Target::Prime(5), 4).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
