//! Randomised field-law checks.

use proptest::prelude::*;

use super::*;

fn poly_text() -> impl Strategy<Value = String> {
    let atoms = ["x", "y", "t", "a2", "1"];
    proptest::collection::vec((-5i64..6, 0..atoms.len(), 0u32..3, 0..atoms.len()), 1..5).prop_map(move |ts| {
        ts.iter()
            .map(|&(c, a, e, b)| format!("({c})*{}^{e}*{}", atoms[a], atoms[b]))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly_text(), poly_text()).prop_filter_map("zero denominator", |(n, d)| {
        let den = expr(&d);
        (!den.is_zero()).then(|| expr(&n).checked_div(&den).ok()).flatten()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_and_product_invert(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn multiplication_distributes(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn render_round_trips(a in ratfunc()) {
        prop_assert_eq!(parse(&render(&a)).unwrap(), a);
    }

    #[test]
    fn gcd_divides_both(a in poly_text(), b in poly_text(), c in poly_text()) {
        let (a, b, c) = (parse_poly(&a).unwrap(), parse_poly(&b).unwrap(), parse_poly(&c).unwrap());
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        if !g.is_zero() {
            prop_assert!(ac.div_exact(&g).is_some());
            prop_assert!(bc.div_exact(&g).is_some());
            if !c.is_zero() {
                prop_assert!(g.div_exact(&c.primitive().1).is_some());
            }
        }
    }

    #[test]
    fn derivative_obeys_the_product_rule(a in ratfunc(), b in ratfunc()) {
        let x = v("x");
        let lhs = (&a * &b).derivative(x);
        let rhs = &(&a.derivative(x) * &b) + &(&a * &b.derivative(x));
        prop_assert_eq!(lhs, rhs);
    }
}
