mod common;

use cfreduce::transform::{
    affine_tail, canonicalize, multiply_lemma, negate_lemma, shift_corollary, FormalCF, NegateVariant, PolyFraction,
    ShiftVariant,
};
use cfreduce::{Coeff, Error, Field};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn fields() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![Field::Rational, fp(13), fp(101)])
}

fn with_constant_at_1(cf: &FormalCF, x: &Coeff) -> FormalCF {
    let mut entries = cf.entries().to_vec();
    entries.insert(1, PolyFraction::constant(x.clone()));
    FormalCF::new(entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rewrites_preserve_value(seed in any::<u64>(), field in fields(), len in 1usize..7) {
        let mut rng = rng(seed);
        let cf = formal_cf(&mut rng, field, len);
        let value = cf.fold().unwrap();
        let b = nonzero_coeff(&mut rng, field, 9);
        let c = nonzero_coeff(&mut rng, field, 9);
        let d = coeff(&mut rng, field, 9);
        let x = nonzero_coeff(&mut rng, field, 9);

        let lambda = c.checked_div(&b).unwrap();
        prop_assert_eq!(multiply_lemma(&cf, &b, &c).unwrap().fold().unwrap(), value.scale(&lambda));
        let affine = value.scale(&c).checked_add(&PolyFraction::constant(d.clone())).unwrap();
        prop_assert_eq!(affine_tail(&cf, &c, &d).unwrap().fold().unwrap(), affine);
        if len >= 2 {
            let i = rng.gen_range(0..len - 1);
            for variant in [NegateVariant::First, NegateVariant::Second] {
                let out = negate_lemma(&cf, i, variant).unwrap();
                prop_assert_eq!(out.len(), len + 1);
                prop_assert_eq!(out.fold().unwrap(), value.clone());
            }
        }
        prop_assert_eq!(shift_corollary(&cf, &x, ShiftVariant::Head).unwrap().fold().unwrap(), value.clone());
        let split_input = with_constant_at_1(&cf, &x);
        let split = shift_corollary(&split_input, &x, ShiftVariant::Split).unwrap();
        prop_assert_eq!(split.len(), split_input.len() - 1);
        prop_assert_eq!(split.fold().unwrap(), split_input.fold().unwrap());
    }

    #[test]
    fn canonicalize_is_idempotent(seed in any::<u64>(), field in fields(), len in 1usize..6) {
        let mut rng = rng(seed);
        let cf = formal_cf(&mut rng, field, len);
        let once = canonicalize(&cf).unwrap();
        let twice = canonicalize(&FormalCF::from_cf(&once).unwrap()).unwrap();
        prop_assert_eq!(once.entries(), twice.entries());
        let v = cf.fold().unwrap();
        prop_assert_eq!(FormalCF::from_cf(&once).unwrap().fold().unwrap(), v);
    }

    #[test]
    fn lemma_identity_both_sides(seed in any::<u64>(), len in 1usize..6) {
        let mut rng = rng(seed);
        let field = Field::Rational;
        let base = formal_cf(&mut rng, field, len);
        let b = nonzero_coeff(&mut rng, field, 9);
        let c = nonzero_coeff(&mut rng, field, 9);
        let alt = |even: &Coeff, odd: &Coeff| {
            let entries = base
                .entries()
                .iter()
                .enumerate()
                .map(|(i, e)| e.scale(if i % 2 == 0 { even } else { odd }))
                .collect();
            FormalCF::new(entries).unwrap().fold().unwrap()
        };
        prop_assert_eq!(alt(&c, &b).scale(&b), alt(&b, &c).scale(&c));
    }
}

#[test]
fn rewrites_reject_bad_arguments() {
    let mut rng = rng(30);
    let cf = formal_cf(&mut rng, Field::Rational, 3);
    let zero = Coeff::zero(Field::Rational);
    let one = Coeff::one(Field::Rational);
    assert_eq!(multiply_lemma(&cf, &zero, &one).unwrap_err(), Error::ZeroMultiplier);
    assert_eq!(affine_tail(&cf, &zero, &one).unwrap_err(), Error::ZeroMultiplier);
    assert!(matches!(negate_lemma(&cf, 2, NegateVariant::First), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(shift_corollary(&cf, &one, ShiftVariant::Split), Err(Error::Precondition(_))));
    let zero_tail = FormalCF::new(vec![PolyFraction::one(Field::Rational), PolyFraction::zero(Field::Rational)]);
    assert_eq!(zero_tail.unwrap_err(), Error::ZeroTail(1));
}
