//! Continued fraction expansion: a precision-aware engine for truncated
//! Laurent series, an exact engine for square roots of polynomials, the
//! Euclidean algorithm for rational functions, and continuants.

mod surd;

pub use surd::{detect_quasi_period, expand_surd, find_quasi_period, PeriodInfo, PeriodOutcome, SurdState};

use crate::algebra::{Field, Poly};
use crate::error::{Error, Result};
use crate::series::LaurentSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Series,
    Surd,
    Rational,
}

/// Why an expansion stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// The value is the rational function given by the entries.
    Complete,
    /// The requested number of quotients was produced.
    Limit,
    /// The next quotient is not determined by the guaranteed coefficients.
    PrecisionExhausted,
}

/// Partial quotients `[a_0, a_1, ...]` with `deg a_h >= 1` for `h >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    field: Field,
    entries: Vec<Poly>,
    source: Source,
    termination: Termination,
}

impl ContinuedFraction {
    /// Builds a canonical continued fraction from explicit entries.
    pub fn new(entries: Vec<Poly>, source: Source, termination: Termination) -> Result<Self> {
        let field = entries.first().ok_or(Error::EmptyContinuedFraction)?.field();
        for (h, a) in entries.iter().enumerate() {
            if a.field() != field {
                return Err(Error::MixedFields(field, a.field()));
            }
            if h >= 1 && a.degree().unwrap_or(0) < 1 {
                return Err(Error::Precondition(format!("partial quotient a_{h} = {a} is not of positive degree")));
            }
        }
        Ok(ContinuedFraction { field, entries, source, termination })
    }

    pub(crate) fn from_parts(field: Field, entries: Vec<Poly>, source: Source, termination: Termination) -> Self {
        ContinuedFraction { field, entries, source, termination }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn termination(&self) -> Termination {
        self.termination
    }

    pub fn is_complete(&self) -> bool {
        self.termination == Termination::Complete
    }
}

/// Convergent `x_h / y_h` built by the continuant recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub x: Poly,
    pub y: Poly,
}

/// Expands a Laurent series. Each emitted quotient is determined by the
/// guaranteed coefficients; when the next one is not, the expansion stops
/// with [`Termination::PrecisionExhausted`].
///
/// An exact series is a rational function `N / X^k` and is expanded by the
/// Euclidean algorithm.
pub fn expand_series(f: &LaurentSeries, max_quotients: usize) -> ContinuedFraction {
    let field = f.field();
    if f.is_exact() {
        let (num, den) = exact_series_as_fraction(f);
        let mut cf = expand_rational(&num, &den).expect("nonzero denominator");
        cf.source = Source::Series;
        if cf.entries.len() > max_quotients {
            cf.entries.truncate(max_quotients);
            cf.termination = Termination::Limit;
        }
        return cf;
    }
    let mut entries = Vec::new();
    let mut current = f.clone();
    let termination = loop {
        if entries.len() >= max_quotients {
            break Termination::Limit;
        }
        let Ok(a) = current.polynomial_part() else {
            break Termination::PrecisionExhausted;
        };
        let rem = current.checked_sub(&LaurentSeries::from_poly(&a)).expect("same field");
        entries.push(a);
        if rem.is_zero() {
            break Termination::Complete;
        }
        if rem.is_indeterminate() {
            break Termination::PrecisionExhausted;
        }
        current = rem.inverse().expect("nonzero leading coefficient");
    };
    ContinuedFraction { field, entries, source: Source::Series, termination }
}

/// Writes an exact Laurent polynomial as `num / X^k`.
fn exact_series_as_fraction(f: &LaurentSeries) -> (Poly, Poly) {
    let field = f.field();
    if f.is_zero() {
        return (Poly::zero(field), Poly::one(field));
    }
    let top = f.leading_exponent().unwrap();
    let low = top - f.coeffs().len() as i64 + 1;
    let shift = (-low).max(0);
    // num has degree top + shift; coefficient of X^(e + shift) is f_e.
    let mut asc = vec![crate::algebra::Coeff::zero(field); (top + shift + 1) as usize];
    for (i, c) in f.coeffs().iter().enumerate() {
        let e = top - i as i64 + shift;
        asc[e as usize] = c.clone();
    }
    let num = Poly::new(field, asc).expect("single field");
    let den = Poly::monomial(crate::algebra::Coeff::one(field), shift as usize);
    (num, den)
}

/// Euclidean algorithm on `x / y`.
pub fn expand_rational(x: &Poly, y: &Poly) -> Result<ContinuedFraction> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = x.field();
    let (mut num, mut den) = (x.clone(), y.clone());
    let mut entries = Vec::new();
    while !den.is_zero() {
        let (q, r) = num.divrem(&den)?;
        entries.push(q);
        num = den;
        den = r;
    }
    Ok(ContinuedFraction { field, entries, source: Source::Rational, termination: Termination::Complete })
}

/// Convergents `x_h/y_h` for every entry, from
/// `x_h = a_h x_{h-1} + x_{h-2}`, `y_h = a_h y_{h-1} + y_{h-2}`,
/// `x_{-1} = 1, y_{-1} = 0, x_{-2} = 0, y_{-2} = 1`.
pub fn convergents(cf: &ContinuedFraction) -> Vec<Convergent> {
    continuants(cf.field, cf.entries())
}

pub(crate) fn continuants(field: Field, entries: &[Poly]) -> Vec<Convergent> {
    let mut out = Vec::with_capacity(entries.len());
    let (mut x2, mut y2) = (Poly::zero(field), Poly::one(field));
    let (mut x1, mut y1) = (Poly::one(field), Poly::zero(field));
    for (index, a) in entries.iter().enumerate() {
        let x = &(a * &x1) + &x2;
        let y = &(a * &y1) + &y2;
        out.push(Convergent { index, x: x.clone(), y: y.clone() });
        (x2, y2) = (x1, y1);
        (x1, y1) = (x, y);
    }
    out
}

/// Outcome of checking `deg(y_h F - x_h) = -deg a_{h+1} - deg y_h`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeLawReport {
    pub holds: Vec<usize>,
    pub violated: Vec<usize>,
    /// Indices where the series precision or the known quotients do not
    /// determine both sides.
    pub untestable: Vec<usize>,
}

impl DegreeLawReport {
    pub fn all_hold(&self) -> bool {
        self.violated.is_empty()
    }
}

pub fn check_degree_law(f: &LaurentSeries, convs: &[Convergent], cf: &ContinuedFraction) -> DegreeLawReport {
    let mut report = DegreeLawReport::default();
    for c in convs {
        let h = c.index;
        let err = LaurentSeries::from_poly(&c.y)
            .checked_mul(f)
            .and_then(|s| s.checked_sub(&LaurentSeries::from_poly(&c.x)))
            .expect("same field");
        if err.is_zero() {
            if cf.is_complete() && h + 1 == cf.len() {
                report.holds.push(h);
            } else {
                report.violated.push(h);
            }
            continue;
        }
        let (Some(lead), Some(next)) = (err.leading_exponent(), cf.entries().get(h + 1)) else {
            report.untestable.push(h);
            continue;
        };
        let expected = -(next.degree_i64()) - c.y.degree_i64();
        if lead == expected {
            report.holds.push(h);
        } else {
            report.violated.push(h);
        }
    }
    report
}

/// Whether coprime `x, y` satisfy `deg(y F - x) < -deg y`, which makes
/// `x/y` a convergent of `F`.
pub fn is_convergent(x: &Poly, y: &Poly, f: &LaurentSeries) -> Result<bool> {
    if !x.gcd(y)?.is_constant() {
        return Err(Error::NonCoprime);
    }
    let dy = y.degree().ok_or(Error::DivisionByZero)? as i64;
    let err = LaurentSeries::from_poly(y).checked_mul(f)?.checked_sub(&LaurentSeries::from_poly(x))?;
    if let Some(e) = err.error_exponent() {
        if e >= -dy {
            return Err(Error::InsufficientPrecision(format!(
                "need the coefficient of X^{} of yF - x, series is only known above X^{e}",
                -dy
            )));
        }
    }
    Ok(match err.leading_exponent() {
        None => true,
        Some(lead) => lead < -dy,
    })
}

/// Folds a finite list of polynomial entries into `x/y`.
pub fn fold_entries(field: Field, entries: &[Poly]) -> Option<(Poly, Poly)> {
    continuants(field, entries).pop().map(|c| (c.x, c.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::Coeff;
    use crate::series::{g3_series, series_sqrt};

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(Field::Rational, c)
    }

    #[test]
    fn rational_expansions() {
        let cf = expand_rational(&q(&[1, 0, 1]), &q(&[0, 1])).unwrap();
        assert_eq!(cf.entries(), &[q(&[0, 1]), q(&[0, 1])]);
        let cf = expand_rational(&q(&[1]), &q(&[0, 1])).unwrap();
        assert_eq!(cf.entries(), &[Poly::zero(Field::Rational), q(&[0, 1])]);
        assert!(expand_rational(&q(&[1]), &Poly::zero(Field::Rational)).is_err());
    }

    #[test]
    fn polynomial_series_is_complete() {
        let f = LaurentSeries::from_poly(&q(&[1, 0, 1]));
        let cf = expand_series(&f, 10);
        assert_eq!(cf.entries(), &[q(&[1, 0, 1])]);
        assert!(cf.is_complete());
    }

    #[test]
    fn convergent_recurrence() {
        let cf = ContinuedFraction::new(vec![q(&[0, 1])], Source::Rational, Termination::Complete).unwrap();
        let c = convergents(&cf);
        assert_eq!((c[0].x.clone(), c[0].y.clone()), (q(&[0, 1]), q(&[1])));

        let (a0, a1) = (q(&[1, 2]), q(&[3, 0, 1]));
        let cf = ContinuedFraction::new(vec![a0.clone(), a1.clone()], Source::Rational, Termination::Complete).unwrap();
        let c = convergents(&cf);
        assert_eq!(c[1].x, &(&a0 * &a1) + &q(&[1]));
        assert_eq!(c[1].y, a1);
    }

    #[test]
    fn rejects_non_canonical() {
        assert!(ContinuedFraction::new(vec![q(&[0, 1]), q(&[2])], Source::Rational, Termination::Complete).is_err());
    }

    #[test]
    fn series_engine_on_sqrt() {
        let d = q(&[2, 2, 3, -2, 1]);
        let cf = expand_series(&series_sqrt(&d, 12).unwrap(), 3);
        assert_eq!(cf.entries()[0], q(&[1, -1, 1]));
        assert_eq!(cf.entries()[1], Poly::from_rationals(&[rat(-5, 8), rat(1, 2)]));
        assert_eq!(cf.entries()[2], Poly::from_rationals(&[rat(-344, 441), rat(32, 21)]));
        assert_eq!(cf.termination(), Termination::Limit);
    }

    #[test]
    fn series_engine_runs_out_of_precision() {
        let d = q(&[2, 2, 3, -2, 1]);
        let cf = expand_series(&series_sqrt(&d, 5).unwrap(), 100);
        assert_eq!(cf.termination(), Termination::PrecisionExhausted);
        assert!(cf.len() < 5);
    }

    #[test]
    fn g3_quotients_are_linear() {
        let cf = expand_series(&g3_series(40, Field::Rational), 100);
        assert!(cf.len() > 10);
        assert!(cf.entries()[1..].iter().all(|a| a.degree() == Some(1)));
    }

    #[test]
    fn degree_law_first_step() {
        let d = q(&[1, 2, 3, -2, 1]);
        let f = series_sqrt(&d, 20).unwrap();
        let cf = expand_series(&f, 4);
        let convs = convergents(&cf);
        let report = check_degree_law(&f, &convs, &cf);
        assert!(report.holds.contains(&0));
        assert!(report.all_hold());
        // deg(F - (X^2 - X + 1)) = -1
        let e = f.checked_sub(&LaurentSeries::from_poly(&q(&[1, -1, 1]))).unwrap();
        assert_eq!(e.leading_exponent(), Some(-1));
    }

    #[test]
    fn degree_law_vacuous_at_end() {
        let f = LaurentSeries::exact(
            Field::Rational,
            1,
            vec![Coeff::one(Field::Rational), Coeff::zero(Field::Rational), Coeff::one(Field::Rational)],
        );
        let cf = expand_series(&f, 10);
        assert!(cf.is_complete());
        let report = check_degree_law(&f, &convergents(&cf), &cf);
        assert_eq!(report.holds, (0..cf.len()).collect::<Vec<_>>());
    }

    #[test]
    fn convergent_criterion() {
        let d = q(&[2, 2, 3, -2, 1]);
        let f = series_sqrt(&d, 30).unwrap();
        let cf = expand_series(&f, 5);
        for c in convergents(&cf) {
            assert!(is_convergent(&c.x, &c.y, &f).unwrap(), "h = {}", c.index);
            if c.y.degree() >= Some(1) {
                let bumped = &c.x + &q(&[1]);
                if let Ok(ok) = is_convergent(&bumped, &c.y, &f) {
                    assert!(!ok);
                }
            }
        }
        assert!(!is_convergent(&q(&[1]), &q(&[1]), &f).unwrap());
        assert_eq!(is_convergent(&q(&[0, 1]), &q(&[0, 1]), &f), Err(Error::NonCoprime));
    }

    #[test]
    fn convergent_criterion_needs_precision() {
        let f = series_sqrt(&q(&[2, 2, 3, -2, 1]), 3).unwrap();
        let y = q(&[0, 0, 0, 1]);
        assert!(matches!(is_convergent(&q(&[1]), &y, &f), Err(Error::InsufficientPrecision(_))));
    }
}
