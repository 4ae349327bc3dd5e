//! Exact expansion of `sqrt(D)` through complete quotients `(P_h + sqrt D) / Q_h`.
//!
//! With `A` the polynomial part of `sqrt D`:
//!
//! ```text
//! a_h     = (P_h + A) div Q_h
//! P_{h+1} = a_h Q_h - P_h
//! Q_{h+1} = (D - P_{h+1}^2) / Q_h      (always exact)
//! ```
//!
//! starting from `P_0 = 0, Q_0 = 1`. A constant `Q_h` (equivalently
//! `deg a_h = g + 1`) ends a quasi-period.

use super::{ContinuedFraction, Source, Termination};
use crate::algebra::{Coeff, Poly};
use crate::error::{Error, Result};
use crate::series::series_sqrt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdState {
    d: Poly,
    root: Poly,
    /// `(P_h, Q_h)` for `h = 0..=current`.
    history: Vec<(Poly, Poly)>,
    quotients: Vec<Poly>,
    complete: bool,
}

impl SurdState {
    pub fn new(d: &Poly) -> Result<SurdState> {
        let field = d.field();
        if field.characteristic() == 2 {
            return Err(Error::Characteristic2);
        }
        let deg = d.degree().ok_or(Error::DegreeTooSmall { found: i64::MIN, required: 2 })?;
        if deg % 2 == 1 {
            return Err(Error::OddDegree(deg));
        }
        if !d.is_monic() {
            return Err(Error::NotMonic);
        }
        let root = series_sqrt(d, deg / 2 + 2)?.polynomial_part()?;
        Ok(SurdState {
            d: d.clone(),
            root,
            history: vec![(Poly::zero(field), Poly::one(field))],
            quotients: Vec::new(),
            complete: false,
        })
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    /// Polynomial part of `sqrt D`.
    pub fn root(&self) -> &Poly {
        &self.root
    }

    /// `g` where `deg D = 2g + 2`.
    pub fn genus(&self) -> usize {
        (self.d.degree().unwrap() / 2).saturating_sub(1)
    }

    pub fn history(&self) -> &[(Poly, Poly)] {
        &self.history
    }

    pub fn quotients(&self) -> &[Poly] {
        &self.quotients
    }

    pub fn p(&self) -> &Poly {
        &self.history.last().unwrap().0
    }

    pub fn q(&self) -> &Poly {
        &self.history.last().unwrap().1
    }

    /// True once some `Q_h` vanished, i.e. `D` is a square and `sqrt D` a polynomial.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Emits the next partial quotient and moves to the next complete quotient.
    pub fn advance(&mut self) -> Option<Poly> {
        if self.complete {
            return None;
        }
        let (p, q) = self.history.last().unwrap().clone();
        let a = (&p + &self.root).divrem(&q).expect("Q_h is nonzero").0;
        let p_next = &(&a * &q) - &p;
        let q_next = (&self.d - &(&p_next * &p_next)).div_exact(&q).expect("Q_h divides D - P_{h+1}^2");
        self.quotients.push(a.clone());
        if q_next.is_zero() {
            self.complete = true;
        } else {
            self.history.push((p_next, q_next));
        }
        Some(a)
    }

    /// `a_h` recomputed from the stored `(P_h, Q_h)`.
    fn quotient_at(&self, h: usize) -> Poly {
        if let Some(a) = self.quotients.get(h) {
            return a.clone();
        }
        let (p, q) = &self.history[h];
        (p + &self.root).divrem(q).expect("nonzero").0
    }

    pub fn continued_fraction(&self, termination: Termination) -> ContinuedFraction {
        ContinuedFraction::from_parts(self.d.field(), self.quotients.clone(), Source::Surd, termination)
    }
}

/// Expands `sqrt(d)` exactly for at most `max_quotients` partial quotients.
/// A square `d` ends as [`Termination::Complete`].
pub fn expand_surd(d: &Poly, max_quotients: usize) -> Result<(ContinuedFraction, SurdState)> {
    let mut state = SurdState::new(d)?;
    while state.quotients.len() < max_quotients && state.advance().is_some() {}
    let termination = if state.complete { Termination::Complete } else { Termination::Limit };
    Ok((state.continued_fraction(termination), state))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodInfo {
    /// Least `r >= 1` with `Q_r` constant.
    pub quasi_period: usize,
    /// `m = deg a_1 + ... + deg a_r`.
    pub regulator: usize,
    /// The constant `Q_r`.
    pub multiplier: Coeff,
    /// Least `l` with `(P_{l+1}, Q_{l+1}) = (P_1, Q_1)`, if seen.
    pub full_period: Option<usize>,
}

/// Reads the quasi-period off the complete quotients computed so far.
pub fn detect_quasi_period(state: &SurdState) -> Option<PeriodInfo> {
    let hist = state.history();
    let r = (1..hist.len()).find(|&h| hist[h].1.degree() == Some(0))?;
    let regulator = (1..=r).map(|j| state.quotient_at(j).degree().unwrap_or(0)).sum();
    let multiplier = hist[r].1.leading().unwrap().clone();
    let full_period = hist.get(1).and_then(|first| (1..hist.len().saturating_sub(1)).find(|&l| hist[l + 1] == *first));
    Some(PeriodInfo { quasi_period: r, regulator, multiplier, full_period })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodOutcome {
    Found(PeriodInfo),
    /// No constant `Q_h` within the step bound.
    NotFound {
        steps: usize,
    },
    /// `D` is a square; the expansion terminated.
    Square,
}

impl PeriodOutcome {
    pub fn regulator(&self) -> Option<usize> {
        match self {
            PeriodOutcome::Found(info) => Some(info.regulator),
            _ => None,
        }
    }
}

/// Expands until the first quasi-period closes (within `step_bound`
/// quotients), then far enough past it to see the full period.
pub fn find_quasi_period(d: &Poly, step_bound: usize) -> Result<(PeriodOutcome, SurdState)> {
    let mut state = SurdState::new(d)?;
    loop {
        if let Some(info) = detect_quasi_period(&state) {
            let r = info.quasi_period;
            // The full period is r or 2r; see P_{2r+1}.
            while state.history.len() < 2 * r + 2 && state.advance().is_some() {}
            let info = detect_quasi_period(&state).unwrap();
            return Ok((PeriodOutcome::Found(info), state));
        }
        if state.quotients.len() >= step_bound {
            return Ok((PeriodOutcome::NotFound { steps: step_bound }, state));
        }
        if state.advance().is_none() {
            return Ok((PeriodOutcome::Square, state));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::Field;

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(Field::Rational, c)
    }

    #[test]
    fn periodic_quartic() {
        let (cf, _) = expand_surd(&q(&[1, 2, 3, -2, 1]), 7).unwrap();
        let half = rat(1, 2);
        let expected = [
            q(&[1, -1, 1]),
            Poly::from_rationals(&[-half.clone(), half.clone()]),
            q(&[-2, 2]),
            Poly::from_rationals(&[half.clone(), -half.clone(), half.clone()]),
            q(&[-2, 2]),
            Poly::from_rationals(&[-half.clone(), half.clone()]),
            q(&[2, -2, 2]),
        ];
        assert_eq!(cf.entries(), &expected[..]);
    }

    #[test]
    fn square_terminates() {
        let (cf, state) = expand_surd(&q(&[0, 0, 0, 0, 1]), 5).unwrap();
        assert_eq!(cf.entries(), &[q(&[0, 0, 1])]);
        assert!(cf.is_complete());
        assert!(state.is_complete());
    }

    #[test]
    fn errors() {
        assert_eq!(expand_surd(&q(&[1, 0, 0, 1]), 3).unwrap_err(), Error::OddDegree(3));
        assert_eq!(expand_surd(&q(&[1, 0, 2]), 3).unwrap_err(), Error::NotMonic);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(expand_surd(&Poly::from_ints(f2, &[1, 0, 1]), 3).unwrap_err(), Error::Characteristic2);
    }

    #[test]
    fn mod7_period() {
        let f7 = Field::prime(7).unwrap();
        let d = Poly::from_ints(f7, &[2, 2, 3, -2, 1]);
        let (outcome, state) = find_quasi_period(&d, 50).unwrap();
        let PeriodOutcome::Found(info) = outcome else { panic!("{outcome:?}") };
        assert_eq!(info.regulator, 3);
        assert_eq!(info.quasi_period, 2);
        assert_eq!(info.full_period, Some(2));
        assert_eq!(state.quotients()[0], Poly::from_ints(f7, &[1, 6, 1]));
        assert_eq!(state.quotients()[1], Poly::from_ints(f7, &[2, 4]));
        assert_eq!(state.quotients()[2], Poly::from_ints(f7, &[2, 12, 2]));
    }

    #[test]
    fn periodic_regulator_over_q() {
        let (outcome, _) = find_quasi_period(&q(&[1, 2, 3, -2, 1]), 20).unwrap();
        let PeriodOutcome::Found(info) = outcome else { panic!() };
        assert_eq!((info.quasi_period, info.regulator, info.full_period), (3, 4, Some(6)));
    }
}
