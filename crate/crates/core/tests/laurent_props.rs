use proptest::prelude::*;
use superkl::laurent::SmallPoly;
use superkl::Poly;

fn small_poly() -> impl Strategy<Value = SmallPoly> {
    (-4i32..4, prop::collection::vec(-5i64..=5, 0..6)).prop_map(|(low, c)| SmallPoly::from_dense(low, c))
}

/// Evaluation at an integer point, q^k with k < 0 handled by clearing
/// denominators: returns `q0^s * p(q0)` for a fixed large `s`.
fn eval_scaled(p: &SmallPoly, q0: i64) -> i128 {
    p.terms().map(|(k, c)| (*c as i128) * (q0 as i128).pow((k + 12) as u32)).sum()
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn bar_is_a_ring_involution(a in small_poly(), b in small_poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert!((&a + &a.bar()).is_bar_invariant());
    }

    #[test]
    fn substitutions(a in small_poly(), b in small_poly()) {
        prop_assert_eq!(a.substitute_neg_inv().substitute_neg_inv(), a.clone());
        prop_assert_eq!((&a * &b).substitute_neg_inv(), &a.substitute_neg_inv() * &b.substitute_neg_inv());
        prop_assert_eq!(a.substitute_neg_inv(), a.substitute_neg().bar());
        prop_assert_eq!(a.eval_at_one(), a.terms().map(|(_, c)| *c).sum::<i64>());
    }

    #[test]
    fn multiplication_matches_evaluation(a in small_poly(), b in small_poly(), q0 in 2i64..5) {
        // q0^24 * (ab)(q0) = (q0^12 a(q0)) (q0^12 b(q0))
        let ab: i128 = (&a * &b).terms().map(|(k, c)| (*c as i128) * (q0 as i128).pow((k + 24) as u32)).sum();
        prop_assert_eq!(ab, eval_scaled(&a, q0) * eval_scaled(&b, q0));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn display_parses_back(a in small_poly()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<SmallPoly>().unwrap(), a.clone());
        let big: Poly = s.parse().unwrap();
        prop_assert_eq!(big.to_string(), s);
    }
}

#[test]
fn quantum_factorials_are_bar_invariant() {
    for n in 0..8 {
        let f = SmallPoly::quantum_factorial(n);
        assert!(f.is_bar_invariant());
        // [n]! at q = 1 is n!
        assert_eq!(f.eval_at_one(), (1..=n as i64).product::<i64>());
    }
}

#[test]
fn division_with_remainder_fails() {
    let a: SmallPoly = "q^2 + 1".parse().unwrap();
    let b: SmallPoly = "q + 1".parse().unwrap();
    assert!(a.exact_div(&b).is_err());
}
