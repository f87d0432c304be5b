mod common;

use common::{kelement, tower};
use equicut::exact::{format_number, parse_number, KElement, TowerReal};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn k_field_axioms(x in kelement(), y in kelement(), z in kelement()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.add(&x.neg()).is_zero());
        prop_assert_eq!(x.mul(&KElement::from_int(1)), x.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&KElement::from_int(1).div(&x).unwrap()), KElement::from_int(1));
        }
    }

    #[test]
    fn k_embeds_in_tower(x in kelement(), y in kelement()) {
        let (tx, ty) = (x.to_tower().unwrap(), y.to_tower().unwrap());
        prop_assert_eq!(x.mul(&y).to_tower().unwrap(), &tx * &ty);
        prop_assert_eq!(x.add(&y).to_tower().unwrap(), &tx + &ty);
        prop_assert_eq!(KElement::from_tower(&tx), Some(x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn tower_field_axioms(x in tower(), y in tower(), z in tower()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
        prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * x.inv().unwrap(), TowerReal::one());
        }
    }

    #[test]
    fn tower_sign_matches_float(x in tower(), y in tower()) {
        let d = &x - &y;
        let f = x.to_f64() - y.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(d.sign() as f64, f.signum());
        }
        prop_assert_eq!(x.cmp_value(&y), d.sign().cmp(&0));
    }

    #[test]
    fn literal_round_trip(x in tower()) {
        let text = format_number(&x);
        let back = parse_number(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(format_number(&back), text);
    }
}
