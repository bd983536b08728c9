mod common;

use mocktheta::qseries::{exp, partition_series, QSeries};
use mocktheta::CycNumber;
use proptest::prelude::*;

#[test]
fn cyclotomic_field_axioms() {
    common::field_axioms(512).unwrap();
}

#[test]
fn float_embedding_is_a_homomorphism() {
    common::embedding(512).unwrap();
}

#[test]
fn truncation_monotonicity() {
    common::truncation_monotone(96).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn inverse_series(xs in prop::collection::vec((1i64..10, common::cyc()), 0..5), t in 2i64..12) {
        let f = QSeries::one().add(&QSeries::from_terms(xs.into_iter().map(|(e, c)| (exp(e, 1), c)), None)).truncate(exp(t, 1));
        let g = f.invert().unwrap();
        prop_assert_eq!(f.mul(&g).truncate(exp(t, 1)), QSeries::one().truncate(exp(t, 1)));
    }

    #[test]
    fn scaling_by_root_of_unity_preserves_norm(x in common::nonzero_cyc(), k in 0i64..60) {
        let y = x.mul_root(k, 60);
        prop_assert!((y.embed_float().norm() - x.embed_float().norm()).abs() < 1e-9 * (1.0 + x.embed_float().norm()));
        prop_assert_eq!(y.mul_root(-k, 60), x);
    }

    #[test]
    fn json_series_round_trip(xs in prop::collection::vec((0i64..20, common::cyc()), 0..5)) {
        let f = QSeries::from_terms(xs.into_iter().map(|(e, c)| (exp(e, 4), c)), Some(exp(5, 1)));
        let js = serde_json::to_string(&f.to_json()).unwrap();
        let back = QSeries::try_from(serde_json::from_str::<mocktheta::qseries::QSeriesJson>(&js).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn theorem_coefficients_are_odd_in_h(c in prop::sample::select(vec![5u64, 7, 11]), h in 0i64..1452, a in 0u64..11, b in 0u64..11) {
        let (a, b) = (a % c, b % c);
        let h = h % (12 * c * c) as i64;
        prop_assert_eq!(mocktheta::theorem::alpha(h, a, b, c).unwrap(), -mocktheta::theorem::alpha(-h, a, b, c).unwrap());
        prop_assert_eq!(mocktheta::theorem::beta(h, a, b, c).unwrap(), -mocktheta::theorem::beta(-h, a, b, c).unwrap());
    }
}

#[test]
fn partition_times_euler_is_one() {
    let p = partition_series(40);
    let e = mocktheta::qseries::euler_function(40);
    assert_eq!(p.mul(&e), QSeries::one().truncate(exp(40, 1)));
    assert_eq!(p.coeff(exp(30, 1)), CycNumber::from_integer(5604));
}
