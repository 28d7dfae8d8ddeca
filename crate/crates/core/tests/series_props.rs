//! Property tests for the series algebra: round trips and ring laws hold
//! exactly for randomized rational inputs.

use mdlat_core::ratseries::{rat, Rational, TruncatedSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec(rational(), order + 1).prop_map(TruncatedSeries::from_coeffs)
}

/// Constant term pinned to 1: the domain of log.
fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    series(order).prop_map(|s| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = Rational::one();
        TruncatedSeries::from_coeffs(coeffs)
    })
}

/// Constant term pinned to 0: the domain of exp.
fn nilpotent_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    series(order).prop_map(|s| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = Rational::zero();
        TruncatedSeries::from_coeffs(coeffs)
    })
}

/// Zero constant term and nonzero linear term: the domain of revert.
fn invertible_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (nilpotent_series(order), 1i64..=9, prop::bool::ANY).prop_map(|(s, d, neg)| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[1] = rat(if neg { -1 } else { 1 }, d);
        TruncatedSeries::from_coeffs(coeffs)
    })
}

proptest! {
    #[test]
    fn exp_log_round_trip(s in unit_series(7)) {
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn log_exp_round_trip(s in nilpotent_series(7)) {
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn revert_round_trip(s in invertible_series(6)) {
        let r = s.revert().unwrap();
        prop_assert_eq!(s.compose(&r).unwrap(), TruncatedSeries::identity(6));
        prop_assert_eq!(r.compose(&s).unwrap(), TruncatedSeries::identity(6));
    }

    #[test]
    fn multiplication_commutes(a in series(6), b in series(6)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_associates(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn distributive_law(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }
}
