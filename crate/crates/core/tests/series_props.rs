use genera::series::{rat, LaurentSeries};
use proptest::prelude::*;

const NV: usize = 2;

fn series(qmax: u32) -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec((0..=qmax, -3i32..=3, -3i32..=3, -5i64..=5), 0..8).prop_map(move |terms| {
        LaurentSeries::from_terms(NV, qmax, terms.into_iter().map(|(n, a, b, c)| (n, vec![a, b], rat(c)))).unwrap()
    })
}

/// `1 + (terms of positive q-order)`, always invertible.
fn unit(qmax: u32) -> impl Strategy<Value = LaurentSeries> {
    series(qmax).prop_map(move |s| {
        let tail = LaurentSeries::from_terms(
            NV,
            qmax,
            s.terms().filter(|(n, _, _)| *n > 0).map(|(n, k, c)| (n, k.clone(), c.clone())),
        )
        .unwrap();
        &LaurentSeries::one(NV, qmax) + &tail
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn no_zero_coefficients_stored(a in series(4), b in series(4)) {
        let p = &a * &b;
        prop_assert!(p.terms().all(|(n, _, c)| n <= 4 && *c != rat(0)));
    }

    #[test]
    fn unit_inverse_round_trip(u in unit(5)) {
        let inv = u.inv().unwrap();
        prop_assert_eq!(&u * &inv, LaurentSeries::one(NV, 5));
    }

    #[test]
    fn truncation_coherence(a in series(6), b in series(6), m in 0u32..6) {
        let ta = a.truncate(m);
        let tb = b.truncate(m);
        prop_assert_eq!((&a * &b).truncate(m), &ta * &tb);
        prop_assert_eq!((&a + &b).truncate(m), &ta + &tb);
        prop_assert_eq!(a.pow(3).truncate(m), ta.pow(3));
    }

    #[test]
    fn record_round_trip(a in series(4)) {
        let back = LaurentSeries::from_record(&a.to_record()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn mixed_truncation_takes_the_minimum() {
    let a = LaurentSeries::one(NV, 3);
    let b = LaurentSeries::one(NV, 7);
    assert_eq!((&a * &b).qmax(), 3);
    assert_eq!((&a + &b).qmax(), 3);
}
