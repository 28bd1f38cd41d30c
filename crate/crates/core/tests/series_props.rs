mod common;

use common::*;
use mellin_core::rational::rat;
use mellin_core::{LaurentPolynomial, TruncatedSeries};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = series(&mut rng, -2, 10);
        prop_assume!(a.valuation().is_some());
        let inv = a.invert().unwrap();
        let one = a.mul(&inv);
        let p = one.precision();
        prop_assert!(p >= 10 - 2 * a.valuation().unwrap() - 2);
        prop_assert!(one.eq_up_to(&TruncatedSeries::one(p), p).unwrap());
        prop_assert!(inv.mul(&a).eq_up_to(&TruncatedSeries::one(p), p).unwrap());
    }

    #[test]
    fn multiplication_is_associative_and_commutative(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = series(&mut rng, -1, 8);
        let b = series(&mut rng, 0, 9);
        let c = series(&mut rng, 1, 7);
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        prop_assert_eq!(left.precision(), right.precision());
        prop_assert!(left.eq_up_to(&right, left.precision()).unwrap());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mobius_preserves_valuation(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = series(&mut rng, -3, 10);
        let image = a.substitute_mobius(10).unwrap();
        prop_assert_eq!(image.valuation(), a.valuation());
    }

    #[test]
    fn mobius_is_multiplicative(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = series(&mut rng, 0, 8);
        let b = series(&mut rng, 0, 8);
        let ab = a.mul(&b);
        let lhs = ab.substitute_mobius(ab.precision()).unwrap();
        let rhs = a.substitute_mobius(8).unwrap().mul(&b.substitute_mobius(8).unwrap());
        let p = lhs.precision().min(rhs.precision());
        prop_assert!(lhs.eq_up_to(&rhs, p).unwrap());
    }

    #[test]
    fn derivative_obeys_leibniz(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = series(&mut rng, -2, 8);
        let b = series(&mut rng, 0, 8);
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        let p = lhs.precision().min(rhs.precision());
        prop_assert!(lhs.eq_up_to(&rhs, p).unwrap());
    }
}

#[test]
fn mobius_of_variable_is_alternating_geometric() {
    let u = TruncatedSeries::from_poly(&LaurentPolynomial::var(), 16);
    let image = u.substitute_mobius(16).unwrap();
    assert_eq!(image.precision(), 16);
    for k in 1..16 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        assert_eq!(image.coeff(k).unwrap(), rat(sign));
    }
    assert_eq!(image.coeff(0).unwrap(), rat(0));
    assert!(image.coeff(16).is_err());
}
