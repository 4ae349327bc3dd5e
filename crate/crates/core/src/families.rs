//! The quartic family `D = (X^2 + u)^2 + 4v(X + w)`, its closed-form
//! partial quotients, torsion conditions, regulators modulo primes and
//! certificates of non-periodicity from incompatible regulators.
//!
//! With the normalisation `u + w^2 = v`,
//!
//! ```text
//! a_0 = X^2 + u,    a_h = 2(X - c_h)/b_h   (h >= 1)
//! b_1 = 4v,  b_2 = 1/s_2,
//! b_{2h}   = (s_3 s_5 ... s_{2h-1}) / (s_2 s_4 ... s_{2h})
//! b_{2h+1} = 4v (s_2 s_4 ... s_{2h}) / (s_3 s_5 ... s_{2h+1})
//! c_1 = w,  c_{h+1} = (-1)^h (w - s_2 + s_3 - ... + (-1)^h s_{h+1})
//! s_2 = 1,  s_3 = v/(1 - 2w),  s_{h+1} = v / (s_h (s_h - 1) s_{h-1})
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::rational::reduce_rational;
use crate::algebra::{discriminant, Coeff, Field, Poly};
use crate::cf::{find_quasi_period, PeriodInfo, PeriodOutcome};
use crate::error::{Error, Result};
use crate::reduction::{reduce_mod_p, Reduction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    u: Coeff,
    v: Coeff,
    w: Coeff,
    normalized: bool,
}

impl FamilyParams {
    pub fn new(u: Coeff, v: Coeff, w: Coeff) -> Result<FamilyParams> {
        let field = u.field();
        for c in [&v, &w] {
            if c.field() != field {
                return Err(Error::MixedFields(field, c.field()));
            }
        }
        if field.characteristic() == 2 {
            return Err(Error::Characteristic2);
        }
        if v.is_zero() {
            return Err(Error::Precondition("v = 0 makes D a square".into()));
        }
        let normalized = &u + &(&w * &w) == v;
        Ok(FamilyParams { u, v, w, normalized })
    }

    /// `u = v - w^2`.
    pub fn normalized(v: Coeff, w: Coeff) -> Result<FamilyParams> {
        let u = &v - &(&w * &w);
        FamilyParams::new(u, v, w)
    }

    pub fn u(&self) -> &Coeff {
        &self.u
    }

    pub fn v(&self) -> &Coeff {
        &self.v
    }

    pub fn w(&self) -> &Coeff {
        &self.w
    }

    pub fn field(&self) -> Field {
        self.u.field()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `(X^2 + u)^2 + 4v(X + w)`.
    pub fn quartic(&self) -> Poly {
        let field = self.field();
        let four_v = &Coeff::from_i64(field, 4) * &self.v;
        let sq = Poly::new(field, vec![self.u.clone(), Coeff::zero(field), Coeff::one(field)]).unwrap();
        let lin = Poly::new(field, vec![&four_v * &self.w, four_v]).unwrap();
        &(&sq * &sq) + &lin
    }
}

/// `(X^2 + u)^2 + 4 kappa`: the regulator-2 case, outside the `v != 0` family.
pub fn constant_tail_quartic(u: &Coeff, kappa: &Coeff) -> Result<Poly> {
    let field = u.field();
    if kappa.is_zero() {
        return Err(Error::Precondition("kappa = 0 makes D a square".into()));
    }
    let sq = Poly::new(field, vec![u.clone(), Coeff::zero(field), Coeff::one(field)])?;
    Ok(&(&sq * &sq) + &Poly::constant(&Coeff::from_i64(field, 4) * kappa))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SValue {
    Finite(Coeff),
    Infinity,
}

impl SValue {
    pub fn finite(&self) -> Option<&Coeff> {
        match self {
            SValue::Finite(c) => Some(c),
            SValue::Infinity => None,
        }
    }
}

impl fmt::Display for SValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SValue::Finite(c) => write!(f, "{c}"),
            SValue::Infinity => write!(f, "inf"),
        }
    }
}

/// `s_0 = 0, s_1 = inf, s_2 = 1, s_3, ...` up to the requested length or
/// the first infinite value beyond `s_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSequence {
    values: Vec<SValue>,
    terminal: Option<usize>,
}

impl SSequence {
    pub fn values(&self) -> &[SValue] {
        &self.values
    }

    /// Index `h >= 2` with `s_h = inf`, if reached.
    pub fn terminal(&self) -> Option<usize> {
        self.terminal
    }

    pub fn get(&self, h: usize) -> Option<&Coeff> {
        self.values.get(h)?.finite()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `s_0 ..= s_n`, stopping early at an infinite value.
pub fn s_sequence(params: &FamilyParams, n: usize) -> Result<SSequence> {
    if !params.normalized {
        return Err(Error::Precondition("the s-sequence needs u + w^2 = v".into()));
    }
    let field = params.field();
    let one = Coeff::one(field);
    let mut values = vec![SValue::Finite(Coeff::zero(field)), SValue::Infinity, SValue::Finite(one.clone())];
    let mut terminal = None;
    if n >= 3 {
        let den = &one - &(&Coeff::from_i64(field, 2) * &params.w);
        if den.is_zero() {
            values.push(SValue::Infinity);
            terminal = Some(3);
        } else {
            values.push(SValue::Finite(&params.v / &den));
        }
    }
    while terminal.is_none() && values.len() <= n {
        let h = values.len() - 1;
        let (sh, sh1) = (values[h].finite().unwrap(), values[h - 1].finite().unwrap());
        let den = &(sh * &(sh - &one)) * sh1;
        if den.is_zero() {
            values.push(SValue::Infinity);
            terminal = Some(h + 1);
        } else {
            values.push(SValue::Finite(&params.v / &den));
        }
    }
    values.truncate(n + 1);
    Ok(SSequence { values, terminal: terminal.filter(|&t| t <= n) })
}

/// `(b_h, c_h)` for `h = 1 ..= n`.
pub fn quotient_closed_forms(seq: &SSequence, params: &FamilyParams, n: usize) -> Result<Vec<(Coeff, Coeff)>> {
    let field = params.field();
    let s = |i: usize| -> Result<Coeff> {
        seq.get(i).cloned().ok_or_else(|| Error::Precondition(format!("s_{i} is infinite or was not computed")))
    };
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut b = if k % 2 == 0 { Coeff::one(field) } else { &Coeff::from_i64(field, 4) * &params.v };
        // Even k: odd indices 3, 5, .. k-1 up, even 2, 4, .. k down.
        // Odd k: even 2, 4, .. k-1 up, odd 3, 5, .. k down.
        let (up_start, down_start) = if k % 2 == 0 { (3, 2) } else { (2, 3) };
        for i in (up_start..k).step_by(2) {
            b = &b * &s(i)?;
        }
        for i in (down_start..=k).step_by(2) {
            b = &b / &s(i)?;
        }
        let c = if k == 1 {
            params.w.clone()
        } else {
            let mut tot = params.w.clone();
            for i in 2..=k {
                let term = s(i)?;
                tot = if i % 2 == 0 { &tot - &term } else { &tot + &term };
            }
            if (k - 1) % 2 == 1 {
                -&tot
            } else {
                tot
            }
        };
        out.push((b, c));
    }
    Ok(out)
}

/// `a_0 ..= a_n` from the closed forms.
pub fn closed_form_quotients(params: &FamilyParams, n: usize) -> Result<Vec<Poly>> {
    let field = params.field();
    let seq = s_sequence(params, n.max(3))?;
    let bc = quotient_closed_forms(&seq, params, n)?;
    let mut out = vec![Poly::new(field, vec![params.u.clone(), Coeff::zero(field), Coeff::one(field)])?];
    let two = Coeff::from_i64(field, 2);
    for (b, c) in bc {
        let scale = &two / &b;
        out.push(Poly::new(field, vec![-&(&scale * &c), scale])?);
    }
    Ok(out)
}

/// Whether `params` satisfies the listed condition for the divisor at
/// infinity to have order `m`.
///
/// `m = 2` asks that `v(X + w)` be constant, which never holds when
/// `v != 0`; see [`constant_tail_quartic`]. `m = 3` is `u = -w^2`. From
/// `m = 4` on the parameters must be normalised.
pub fn torsion_condition(m: u32, params: &FamilyParams) -> Result<bool> {
    let field = params.field();
    let (u, v, w) = (&params.u, &params.v, &params.w);
    let one = Coeff::one(field);
    match m {
        2 => return Ok(false),
        3 => return Ok(*u == -&(w * w)),
        4..=8 | 11 => {}
        _ => return Err(Error::UnsupportedTorsionOrder(m)),
    }
    if !params.normalized {
        return Err(Error::Precondition("torsion conditions for m >= 4 need u + w^2 = v".into()));
    }
    let seq = s_sequence(params, 5)?;
    let s = |i: usize| seq.get(i);
    Ok(match m {
        4 => one == &Coeff::from_i64(field, 2) * w,
        5 => *v == &one - &(&Coeff::from_i64(field, 2) * w),
        6 => s(4) == Some(&one),
        7 => s(4).is_some() && s(4) == s(3),
        8 => s(5).is_some() && s(5) == s(3),
        11 => match (s(3), s(5)) {
            (Some(s3), Some(s5)) => s3 * &(s3 - &one) == &(s5 * s5) * &(s5 - &one),
            _ => false,
        },
        _ => unreachable!(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BadPrime {
    /// `p = 2`.
    Two,
    /// `p` divides a coefficient denominator of `D`.
    Denominator,
    /// `p` divides the leading coefficient.
    LeadingCoefficient,
    /// `p` divides the discriminant.
    Discriminant,
}

impl fmt::Display for BadPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BadPrime::Two => "p = 2",
            BadPrime::Denominator => "p divides a coefficient denominator",
            BadPrime::LeadingCoefficient => "p divides the leading coefficient",
            BadPrime::Discriminant => "p divides the discriminant",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepResult {
    Regulator(PeriodInfo),
    Bad(BadPrime),
    /// No quasi-period within the step bound.
    NotFound {
        steps: usize,
    },
    /// `D mod p` is a square.
    Square,
}

impl SweepResult {
    pub fn regulator(&self) -> Option<usize> {
        match self {
            SweepResult::Regulator(info) => Some(info.regulator),
            _ => None,
        }
    }
}

/// Odd, `p` not dividing a denominator, the leading coefficient or the discriminant.
pub fn good_reduction_screen(d: &Poly, p: u64) -> Result<Option<BadPrime>> {
    if p == 2 {
        return Ok(Some(BadPrime::Two));
    }
    let coeffs = d.rational_coeffs()?;
    if coeffs.iter().any(|c| reduce_rational(c, p).is_none()) {
        return Ok(Some(BadPrime::Denominator));
    }
    if coeffs.last().and_then(|lc| reduce_rational(lc, p)) == Some(0) {
        return Ok(Some(BadPrime::LeadingCoefficient));
    }
    let disc = discriminant(d)?;
    if disc.is_zero() || reduce_rational(&disc, p) == Some(0) {
        return Ok(Some(BadPrime::Discriminant));
    }
    Ok(None)
}

/// Regulator of `sqrt(D mod p)` for every prime passing the screen, one thread per prime.
pub fn regulator_sweep(d: &Poly, primes: &[u64], step_bound: usize) -> Result<BTreeMap<u64, SweepResult>> {
    for &p in primes {
        Field::prime(p)?;
    }
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = primes.iter().map(|&p| scope.spawn(move || (p, sweep_one(d, p, step_bound)))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect::<Vec<_>>()
    });
    results.into_iter().map(|(p, r)| r.map(|r| (p, r))).collect()
}

fn sweep_one(d: &Poly, p: u64, step_bound: usize) -> Result<SweepResult> {
    if let Some(bad) = good_reduction_screen(d, p)? {
        return Ok(SweepResult::Bad(bad));
    }
    let Reduction::Good(dp) = reduce_mod_p(d, p)? else { unreachable!("screened") };
    Ok(match find_quasi_period(&dp, step_bound)?.0 {
        PeriodOutcome::Found(info) => SweepResult::Regulator(info),
        PeriodOutcome::NotFound { steps } => SweepResult::NotFound { steps },
        PeriodOutcome::Square => SweepResult::Square,
    })
}

/// Why `m_p p^i = m_q q^j` has no solution in `i, j >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YuWitness {
    /// A prime `ell` other than `p, q` with `v_ell(m_p) != v_ell(m_q)`.
    Core { ell: u64, v_p_side: u32, v_q_side: u32 },
    /// `v_ell(m_q) < v_ell(m_p)` for `ell` one of the pair; the side that
    /// may not gain factors of `ell` already has too few.
    Exponent { ell: u64, v_p_side: u32, v_q_side: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YuCertificate {
    pub p: u64,
    pub q: u64,
    pub m_p: u64,
    pub m_q: u64,
    pub witness: YuWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YuOutcome {
    /// No divisor class over Q can have these reductions: the expansion is not periodic.
    NonPeriodic(YuCertificate),
    Inconclusive {
        reason: String,
    },
}

fn vp(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn strip(mut n: u64, p: u64) -> u64 {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).find(|d| n.is_multiple_of(*d) || d * d > n).map(|d| if n.is_multiple_of(d) { d } else { n }).unwrap()
}

/// Exact decision for one pair.
pub fn yu_pair(p: u64, m_p: u64, q: u64, m_q: u64) -> Option<YuWitness> {
    let core_p = strip(strip(m_p, p), q);
    let core_q = strip(strip(m_q, p), q);
    if core_p != core_q {
        // The cofactors are coprime, so each of their primes has unequal valuations.
        let g = core_p.gcd(&core_q);
        let ell = smallest_prime_factor((core_p / g) * (core_q / g));
        return Some(YuWitness::Core { ell, v_p_side: vp(m_p, ell), v_q_side: vp(m_q, ell) });
    }
    if vp(m_q, p) < vp(m_p, p) {
        return Some(YuWitness::Exponent { ell: p, v_p_side: vp(m_p, p), v_q_side: vp(m_q, p) });
    }
    if vp(m_p, q) < vp(m_q, q) {
        return Some(YuWitness::Exponent { ell: q, v_p_side: vp(m_p, q), v_q_side: vp(m_q, q) });
    }
    None
}

/// Looks for a pair of primes whose regulators are incompatible.
pub fn yu_certificate(regs: &BTreeMap<u64, u64>) -> YuOutcome {
    let usable: Vec<(u64, u64)> = regs.iter().filter(|(_, &m)| m > 0).map(|(&p, &m)| (p, m)).collect();
    if usable.len() < 2 {
        return YuOutcome::Inconclusive { reason: format!("need two primes with regulators, have {}", usable.len()) };
    }
    for (i, &(p, m_p)) in usable.iter().enumerate() {
        for &(q, m_q) in &usable[i + 1..] {
            if let Some(witness) = yu_pair(p, m_p, q, m_q) {
                return YuOutcome::NonPeriodic(YuCertificate { p, q, m_p, m_q, witness });
            }
        }
    }
    YuOutcome::Inconclusive { reason: "every pair admits m_p p^i = m_q q^j".into() }
}

/// Regulators of a sweep, dropping bad and undecided primes.
pub fn sweep_regulators(sweep: &BTreeMap<u64, SweepResult>) -> BTreeMap<u64, u64> {
    sweep.iter().filter_map(|(&p, r)| r.regulator().map(|m| (p, m as u64))).collect()
}
