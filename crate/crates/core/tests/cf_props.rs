mod common;

use cfreduce::cf::{
    check_degree_law, convergents, expand_rational, expand_series, expand_surd, find_quasi_period, fold_entries,
    is_convergent, PeriodOutcome, Termination,
};
use cfreduce::series::{g3_series, series_sqrt, LaurentSeries};
use cfreduce::{Field, Poly};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn determinants_alternate(entries: &[Poly], field: Field) {
    let convs = convergents(
        &cfreduce::cf::ContinuedFraction::new(entries.to_vec(), cfreduce::cf::Source::Rational, Termination::Limit)
            .unwrap(),
    );
    let (mut x1, mut y1) = (Poly::one(field), Poly::zero(field));
    for (k, c) in convs.iter().enumerate() {
        let det = &(&x1 * &c.y) - &(&c.x * &y1);
        let sign = if k % 2 == 0 { Poly::one(field) } else { -&Poly::one(field) };
        assert_eq!(det, sign, "k = {k}");
        (x1, y1) = (c.x.clone(), c.y.clone());
    }
}

#[test]
fn determinant_identity_all_engines() {
    let mut rng = rng(20);
    for field in [Field::Rational, fp(5), fp(13)] {
        for _ in 0..40 {
            let deg = 2 * rng.gen_range(2..=3);
            let d = monic_small(&mut rng, field, deg, 6);
            let (cf, _) = expand_surd(&d, 8).unwrap();
            determinants_alternate(cf.entries(), field);
            let s = series_sqrt(&d, 30).unwrap();
            determinants_alternate(expand_series(&s, 8).entries(), field);
            let (x, y) = (poly(&mut rng, field, 6, 9), poly(&mut rng, field, 4, 9));
            determinants_alternate(expand_rational(&x, &y).unwrap().entries(), field);
        }
    }
    let g = g3_series(40, Field::Rational);
    determinants_alternate(expand_series(&g, 12).entries(), Field::Rational);
}

#[test]
fn engines_agree() {
    let mut rng = rng(21);
    for (field, cases, prec) in [(Field::Rational, 20, 24), (fp(7), 40, 60), (fp(31), 40, 60)] {
        for _ in 0..cases {
            let deg = 2 * rng.gen_range(2..=3);
            let d = monic_small(&mut rng, field, deg, 5);
            let series_cf = expand_series(&series_sqrt(&d, prec).unwrap(), 100);
            assert!(series_cf.len() >= prec / deg);
            let (surd_cf, _) = expand_surd(&d, series_cf.len()).unwrap();
            assert_eq!(series_cf.entries(), surd_cf.entries(), "{d}");
        }
    }
}

#[test]
fn mirror_identity() {
    let mut rng = rng(22);
    for field in [Field::Rational, fp(11)] {
        for _ in 0..30 {
            let d = monic_small(&mut rng, field, 4, 9);
            let (cf, _) = expand_surd(&d, 7).unwrap();
            let convs = convergents(&cf);
            for h in 1..convs.len() {
                let mirrored = expand_rational(&convs[h].y, &convs[h - 1].y).unwrap();
                let expected: Vec<Poly> = cf.entries()[1..=h].iter().rev().cloned().collect();
                assert_eq!(mirrored.entries(), &expected[..], "{d}, h = {h}");
            }
        }
    }
}

#[test]
fn box_principle_over_small_fields() {
    let mut rng = rng(23);
    for p in [3u64, 5, 7] {
        for _ in 0..30 {
            let d = monic(&mut rng, fp(p), 4, 9);
            let bound = 2 * (p as usize).pow(4);
            let outcome = find_quasi_period(&d, bound).unwrap().0;
            assert!(!matches!(outcome, PeriodOutcome::NotFound { .. }), "{d} over F_{p}");
        }
    }
}

#[test]
fn degree_bound_and_quasi_period_signal() {
    let mut rng = rng(24);
    for field in [Field::Rational, fp(5), fp(7)] {
        for _ in 0..40 {
            let deg = 2 * rng.gen_range(2..=3);
            let g1 = deg / 2;
            let d = monic_small(&mut rng, field, deg, 6);
            let (cf, state) = expand_surd(&d, 12).unwrap();
            for (h, a) in cf.entries().iter().enumerate().skip(1) {
                let da = a.degree().unwrap();
                assert!(da <= g1, "{d}: a_{h} = {a}");
                if let Some((_, qh)) = state.history().get(h) {
                    assert_eq!(da == g1, qh.degree() == Some(0), "{d}: a_{h} = {a}");
                }
            }
        }
    }
}

#[test]
fn folded_convergents_match_series_on_window() {
    let mut rng = rng(25);
    for field in [Field::Rational, fp(13)] {
        for _ in 0..40 {
            let top = rng.gen_range(-1..=2);
            let mut coeffs = vec![nonzero_coeff(&mut rng, field, 9)];
            coeffs.extend((1..24).map(|_| int_coeff(&mut rng, field, 9)));
            let f = LaurentSeries::truncated(field, top, coeffs);
            let cf = expand_series(&f, 100);
            assert_eq!(cf.termination(), Termination::PrecisionExhausted);
            let convs = convergents(&cf);
            for c in &convs {
                assert!(is_convergent(&c.x, &c.y, &f).unwrap(), "{f}: index {}", c.index);
            }
            let (x, y) = fold_entries(field, cf.entries()).unwrap();
            let folded = LaurentSeries::from_fraction(&x, &y, 40).unwrap();
            let lowest = -2 * y.degree_i64();
            for e in lowest..=top {
                assert_eq!(folded.coeff_at(e), f.coeff_at(e), "{f}: X^{e}");
            }
            assert!(check_degree_law(&f, &convs, &cf).all_hold());
        }
    }
}

proptest! {
    #[test]
    fn rational_expansion_folds_back(
        x in prop::collection::vec(-30i64..30, 1..9),
        y in prop::collection::vec(-30i64..30, 1..7),
    ) {
        let (x, y) = (q(&x), q(&y));
        prop_assume!(!y.is_zero());
        let cf = expand_rational(&x, &y).unwrap();
        prop_assert!(cf.is_complete());
        for a in &cf.entries()[1..] {
            prop_assert!(a.degree().unwrap_or(0) >= 1);
        }
        let (fx, fy) = fold_entries(Field::Rational, cf.entries()).unwrap();
        prop_assert_eq!(&fx * &y, &fy * &x);
    }

    #[test]
    fn convergent_degrees_add_up(d in prop::collection::vec(-9i64..9, 4..5)) {
        let mut c = d.clone();
        c.push(1);
        let d = q(&c);
        let (cf, _) = expand_surd(&d, 6).unwrap();
        for conv in convergents(&cf) {
            let expected: usize = cf.entries()[1..=conv.index].iter().map(|a| a.degree().unwrap()).sum();
            prop_assert_eq!(conv.y.degree(), Some(expected));
        }
    }
}
