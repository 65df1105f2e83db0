//! Exact scalars: rationals and cyclotomic fields Q(zeta_m).

mod cyclotomic;
mod field;
pub mod literal;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use field::Field;
pub use literal::{parse_scalar, LiteralError};

use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// `zeta_m^e`.
pub fn zeta(m: u32, e: i64) -> Cyclotomic {
    Cyclotomic::zeta(m, e)
}

pub fn checked_div(a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
    a.div(b).ok_or(ScalarError::DivisionByZero)
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v)
    }

    #[test]
    fn zeta_basics() {
        assert_eq!(zeta(4, 2), c(-1));
        assert_eq!(zeta(8, 8), c(1));
        assert_eq!(zeta(3, 1).add(&zeta(3, 2)), c(-1));
        assert_eq!(zeta(5, 0), c(1));
        assert_eq!(zeta(6, -1), zeta(6, 5));
    }

    #[test]
    fn products_and_inverses() {
        assert_eq!(&zeta(4, 1) * &zeta(4, 3), c(1));
        assert_eq!(zeta(8, 1).inv().unwrap(), zeta(8, 7));
        let a = zeta(12, 1).add(&c(3)).add(&zeta(12, 5));
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(checked_div(&c(1), &Cyclotomic::zero()), Err(ScalarError::DivisionByZero));
        assert!(checked_div(&c(1), &zeta(7, 3)).is_ok());
    }

    #[test]
    fn order_reduction() {
        // zeta_8^2 = zeta_4, checked inside Q(zeta_8)
        assert_eq!(zeta(8, 2), zeta(4, 1).lift(8));
        let n = zeta(8, 2).normalize_order();
        assert_eq!(n.order(), 4);
        assert_eq!(n.coeffs(), zeta(4, 1).coeffs());
        assert_eq!(zeta(8, 4).normalize_order().order(), 1);
        // zeta_8 is not in a smaller field
        assert_eq!(zeta(8, 1).normalize_order().order(), 8);
        // zeta_6 = -zeta_3^2 lives in Q(zeta_3)
        assert_eq!(zeta(6, 1).normalize_order().order(), 3);
    }

    #[test]
    fn mixed_orders_combine_in_lcm() {
        let s = zeta(4, 1).add(&zeta(3, 1));
        assert_eq!(s.order(), 12);
        assert_eq!(s, zeta(12, 3).add(&zeta(12, 4)));
    }

    #[test]
    fn cyclotomic_polynomials() {
        let to_i = |v: Vec<Rational>| v.iter().map(|q| q.to_integer().try_into().unwrap()).collect::<Vec<i64>>();
        assert_eq!(to_i(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(9)), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(euler_phi(9), 6);
    }

    #[test]
    fn literal_roundtrip() {
        let a = parse_scalar("1/2 - 3*z^2 + z", 5).unwrap();
        assert_eq!(a, Cyclotomic::from_rational(rat(1, 2)).sub(&c(3).mul(&zeta(5, 2))).add(&zeta(5, 1)));
        let back = parse_scalar(&a.to_string(), 5).unwrap();
        assert_eq!(a, back);
        assert_eq!(parse_scalar(" - z ^ 2 ", 4).unwrap(), c(1));
        assert_eq!(parse_scalar("z^-1", 8).unwrap(), zeta(8, 7));
        let err = parse_scalar("1 + q", 4).unwrap_err();
        assert_eq!(err.column, 5);
        assert!(parse_scalar("1/0", 4).is_err());
        assert!(parse_scalar("", 4).is_err());
    }

    fn arb_elem(m: u32) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec((-5i64..=5, 1i64..=4), euler_phi(m)).prop_map(move |v| {
            let coeffs: Vec<Rational> = v.into_iter().map(|(p, q)| rat(p, q)).collect();
            Cyclotomic::from_power_coeffs(m, &coeffs)
        })
    }

    fn arb_order() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![1u32, 2, 3, 4, 8, 12])
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 128, .. ProptestConfig::default() })]

        #[test]
        fn field_axioms((a, b, d) in arb_order().prop_flat_map(|m| (arb_elem(m), arb_elem(m), arb_elem(m)))) {
            prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
            prop_assert_eq!(a.add(&b).add(&d), a.add(&b.add(&d)));
            prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_form_is_idempotent(a in arb_order().prop_flat_map(arb_elem)) {
            let once = Cyclotomic::from_power_coeffs(a.order(), a.coeffs());
            let twice = Cyclotomic::from_power_coeffs(once.order(), once.coeffs());
            prop_assert_eq!(once.coeffs(), twice.coeffs());
            prop_assert_eq!(a.normalize_order(), a.normalize_order().normalize_order());
            prop_assert_eq!(a.normalize_order(), a);
        }

        #[test]
        fn arithmetic_commutes_with_embedding(a in arb_elem(4), b in arb_elem(4)) {
            let in8 = a.lift(8).mul(&b.lift(8)).add(&a.lift(8));
            let in4 = a.mul(&b).add(&a).lift(8);
            prop_assert_eq!(in8.coeffs(), in4.coeffs());
            if !b.is_zero() {
                let (l, r) = (b.lift(8).inv().unwrap(), b.inv().unwrap().lift(8));
                prop_assert_eq!(l.coeffs(), r.coeffs());
            }
        }
    }
}
