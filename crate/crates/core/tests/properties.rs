//! Randomized algebraic laws checked with proptest.

use epwforge::exterior::{grade_masks, symplectic_form, volume_dual, wedge, KVector};
use epwforge::field::{Field, PrimeField};
use epwforge::numerology::DivisorClass;
use epwforge::store::{kvector_from_json, kvector_to_json};
use num_rational::Rational64;
use proptest::prelude::*;

const P: u64 = 101;

fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn kvector(grade: usize) -> impl Strategy<Value = KVector<u64>> {
    prop::collection::vec(0..P, grade_masks(grade).len()).prop_map(move |c| KVector::from_coeffs(grade, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn divisor_basis_conversions_roundtrip(h in -1000i64..1000, t in -1000i64..1000) {
        let d = DivisorClass::new(h, t);
        let (x, y) = d.in_h_e();
        prop_assert_eq!(DivisorClass::from_h_e(x, y), Some(d));
        let (x, y) = d.in_h_h2();
        prop_assert_eq!(DivisorClass::from_h_h2(x, y), Some(d));
    }

    #[test]
    fn half_integral_e_coordinates_are_classes(x in -500i64..500, y in -500i64..500) {
        // xH + (y/2)E = (x + 3y)H - yT
        let d = DivisorClass::from_h_e(Rational64::from_integer(x), Rational64::new(y, 2));
        prop_assert_eq!(d, Some(DivisorClass::new(x + 3 * y, -y)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn wedge_is_associative(a in kvector(1), b in kvector(2), c in kvector(2)) {
        let f = field();
        prop_assert_eq!(wedge(&f, &wedge(&f, &a, &b), &c), wedge(&f, &a, &wedge(&f, &b, &c)));
    }

    #[test]
    fn wedge_is_graded_commutative(a in kvector(1), b in kvector(2), c in kvector(3)) {
        let f = field();
        prop_assert_eq!(wedge(&f, &a, &b), wedge(&f, &b, &a));
        let ac = wedge(&f, &a, &c);
        let ca = wedge(&f, &c, &a);
        prop_assert_eq!(ac.add(&f, &ca), KVector::zero(&f, 4));
        prop_assert!(wedge(&f, &a, &a).is_zero(&f));
    }

    #[test]
    fn symplectic_form_is_alternating(a in kvector(3), b in kvector(3)) {
        let f = field();
        prop_assert_eq!(symplectic_form(&f, &a, &b), f.neg(&symplectic_form(&f, &b, &a)));
        prop_assert!(f.is_zero(&symplectic_form(&f, &a, &a)));
    }

    #[test]
    fn volume_dual_squares_to_a_sign(a in kvector(3)) {
        let f = field();
        // e_I -> sgn(I, I') e_I' -> sgn(I, I') sgn(I', I) e_I = -e_I in degree 3
        prop_assert_eq!(volume_dual(&f, &volume_dual(&f, &a)), a.scale(&f, &f.from_i64(-1)));
    }

    #[test]
    fn kvector_json_roundtrip(a in kvector(3)) {
        let f = field();
        prop_assert_eq!(kvector_from_json(&f, 3, &kvector_to_json(&f, &a)).unwrap(), a);
    }
}
