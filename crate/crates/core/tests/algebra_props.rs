//! Properties of the exact arithmetic substrate.

use std::sync::Arc;

use dercalc_core::algebra::{qi, Monomial};
use dercalc_core::{FiniteCarrier, MultiPoly, RatFunc, Q};
use proptest::prelude::*;

fn vars() -> Arc<Vec<String>> {
    MultiPoly::with_vars(&["x", "y"])
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u32..=3, 0u32..=2, -9i64..=9), 0..5)
        .prop_map(|terms| MultiPoly::from_terms(&vars(), terms.into_iter().map(|(a, b, c)| (Monomial(vec![a, b]), qi(c)))))
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn scalar() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalization_respects_products(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly()) {
        let lhs = RatFunc::normalize(&a * &c, &b * &d).unwrap();
        let rhs = RatFunc::normalize(a, b).unwrap().mul(&RatFunc::normalize(c, d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalization_is_idempotent(a in poly(), b in nonzero_poly()) {
        let r = RatFunc::normalize(a, b).unwrap();
        prop_assert_eq!(RatFunc::normalize(r.numer().clone(), r.denom().clone()).unwrap(), r.clone());
        prop_assert!(r.denom().leading_coeff() > Q::from_integer(0.into()));
    }

    #[test]
    fn equal_fractions_normalize_identically(a in poly(), b in nonzero_poly(), k in nonzero_poly()) {
        prop_assert_eq!(
            RatFunc::normalize(&a * &k, &b * &k).unwrap(),
            RatFunc::normalize(a, b).unwrap()
        );
    }

    #[test]
    fn derivative_is_linear(p in poly(), q in poly(), a in scalar(), b in scalar()) {
        let lhs = (&p.scale(&a) + &q.scale(&b)).formal_derivative("x").unwrap();
        let rhs = &p.formal_derivative("x").unwrap().scale(&a) + &q.formal_derivative("x").unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_obeys_product_rule(p in poly(), q in poly()) {
        for v in ["x", "y"] {
            let lhs = (&p * &q).formal_derivative(v).unwrap();
            let rhs = &(&p.formal_derivative(v).unwrap() * &q) + &(&p * &q.formal_derivative(v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rational_function_sums_evaluate_pointwise(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly(),
                                                 x in -6i64..=6, y in -6i64..=6) {
        let pt = [qi(x), qi(y)];
        let (bv, dv) = (b.eval(&pt), d.eval(&pt));
        prop_assume!(bv != Q::from_integer(0.into()) && dv != Q::from_integer(0.into()));
        let sum = RatFunc::normalize(a.clone(), b).unwrap().add(&RatFunc::normalize(c.clone(), d).unwrap());
        prop_assert_eq!(sum.eval(&pt).unwrap(), a.eval(&pt) / bv + c.eval(&pt) / dv);
    }
}

#[test]
fn every_unit_has_an_inverse() {
    for p in [2u64, 3, 5, 7, 11, 13, 101, 257] {
        let k = FiniteCarrier::gf(p).unwrap();
        for u in 1..p {
            let v = k.inv(u).unwrap();
            assert_eq!(k.mul(u, v), 1, "GF({p}): {u} * {v}");
        }
        assert_eq!(k.inv(0), None);
    }
    let z = FiniteCarrier::zmod(12).unwrap();
    assert_eq!(z.units(), vec![1, 5, 7, 11]);
    for u in z.units() {
        assert_eq!(z.mul(u, z.inv(u).unwrap()), 1);
    }
}
