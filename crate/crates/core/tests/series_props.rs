mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use qnahm::monomial::{int, rat};
use qnahm::QSeries;

fn series(denom: i64, order: i64) -> impl Strategy<Value = QSeries> {
    (-3i64..=3, prop::collection::vec(-6i64..=6, 0..14)).prop_map(move |(start, cs)| {
        QSeries::from_coeffs(
            denom,
            start,
            cs.into_iter().map(BigInt::from).collect(),
            order,
        )
    })
}

fn unit_series(denom: i64, order: i64) -> impl Strategy<Value = QSeries> {
    (
        -3i64..=3,
        any::<bool>(),
        prop::collection::vec(-6i64..=6, 0..14),
    )
        .prop_map(move |(start, neg, mut cs)| {
            cs.insert(0, if neg { -1 } else { 1 });
            QSeries::from_coeffs(
                denom,
                start,
                cs.into_iter().map(BigInt::from).collect(),
                order,
            )
        })
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in series(2, 30), b in series(2, 30), c in series(2, 30)) {
        prop_assert!(common::same(&(&a + &b), &(&b + &a)));
        prop_assert!(common::same(&(&(&a + &b) + &c), &(&a + &(&b + &c))));
        prop_assert!((&a - &a.clone()).is_zero());
    }

    #[test]
    fn multiplication_is_a_ring_product(a in series(1, 25), b in series(1, 25), c in series(1, 25)) {
        prop_assert!(common::same(&(&a * &b), &(&b * &a)));
        prop_assert!(common::same(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(common::same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
    }

    #[test]
    fn inversion_round_trips(u in unit_series(3, 40)) {
        let inv = u.invert().unwrap();
        let one = &u * &inv;
        prop_assert_eq!(one.clone(), QSeries::one(3, one.order()));
        let back = inv.invert().unwrap();
        prop_assert!(common::same(&back, &u));
    }

    #[test]
    fn rescale_is_a_ring_morphism(a in series(1, 20), b in series(1, 20), n in 1i64..4, d in 1i64..4) {
        let r = rat(n, d);
        let ra = a.rescale(r).unwrap();
        let rb = b.rescale(r).unwrap();
        prop_assert!(common::same(&(&a * &b).rescale(r).unwrap(), &(&ra * &rb)));
        prop_assert!(common::same(&(&a + &b).rescale(r).unwrap(), &(&ra + &rb)));
    }

    #[test]
    fn mixed_denominators_are_reconciled(a in series(2, 20), b in series(3, 20)) {
        let s = &a + &b;
        prop_assert_eq!(s.denom() % 6, 0);
        prop_assert!(common::same(&(&s - &b), &a));
    }
}

#[test]
fn seeded_ring_axioms() {
    assert_eq!(common::ring_axiom_failures(7, 200), 0);
}

#[test]
fn truncation_below_order_is_reported() {
    let s = QSeries::one(1, 5);
    assert!(s.coeff(int(7)).is_err());
}
