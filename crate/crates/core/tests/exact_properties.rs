use chebosc::annihilator::catalan;
use chebosc::combinat::binom;
use chebosc::{APoly, BigInt, BigRational, ZPoly};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn apoly() -> impl Strategy<Value = APoly> {
    prop::collection::vec((-4i32..=6, small_rational()), 0..5).prop_map(APoly::from_terms)
}

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(apoly(), 0..5).prop_map(ZPoly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn apoly_ring_axioms(x in apoly(), y in apoly(), w in apoly()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &w, &x + &(&y + &w));
        prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
        prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
        prop_assert_eq!(&x + &APoly::zero(), x.clone());
        prop_assert_eq!(&x * &APoly::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn from_terms_is_idempotent(x in apoly()) {
        let again = APoly::from_terms(x.terms().map(|(e, c)| (e, c.clone())));
        prop_assert_eq!(again, x.clone());
        prop_assert!(x.terms().all(|(_, c)| c != &BigRational::from_integer(0.into())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn zpoly_ring_axioms(p in zpoly(), q in zpoly(), r in zpoly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &ZPoly::one(), p.clone());
    }

    #[test]
    fn leibniz_rule(p in zpoly(), q in zpoly(), s in 0usize..5) {
        let lhs = (&p * &q).derivative(s);
        let mut rhs = ZPoly::zero();
        for j in 0..=s {
            let c = BigRational::from_integer(binom(s as i64, j as i64));
            rhs = &rhs + &(&p.derivative(j) * &q.derivative(s - j)).scale_rational(&c);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pascal_rule(n in 1i64..=200, k in -2i64..=202) {
        prop_assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
    }
}

#[test]
fn catalan_by_reflection() {
    for k in 0..=60 {
        let k64 = k as i64;
        assert_eq!(catalan(k), binom(2 * k64, k64) - binom(2 * k64, k64 + 1), "k={k}");
    }
    assert_eq!(binom(8, 4) / BigInt::from(5), catalan(4));
}
