use std::collections::BTreeSet;

use proptest::prelude::*;
use superkl::canonical::Canonical;
use superkl::exterior::{
    bijection_l, bijection_r, binary_thetas, closed_l_poly, closed_l_value, closed_u_vector, crystal_iso_check,
    theta_lower, theta_raise, u_basis, u_basis_via_tensor, LRecursion, Variant,
};
use superkl::weights::dominant_box;
use superkl::{Poly, Shape, WeightFn};

fn w(s: &str) -> WeightFn {
    s.parse().unwrap()
}

#[test]
fn u_three_ways() {
    let c = Canonical::default();
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for f in dominant_box(Shape::new(m, n), 0, 4) {
            let a = u_basis(&f).unwrap();
            assert_eq!(a, closed_u_vector(&f).unwrap(), "closed U{}", f);
            assert_eq!(a, u_basis_via_tensor(&c, &f, None).unwrap(), "tensor U{}", f);
        }
    }
}

#[test]
fn l_three_ways() {
    let c = Canonical::default();
    let rec = LRecursion::new();
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let doms = dominant_box(Shape::new(m, n), 0, 4);
        for f in &doms {
            let tensor = c.l_basis(f, 4).unwrap();
            for g in &doms {
                let closed = closed_l_poly(g, f).unwrap();
                assert_eq!(rec.l_poly(g, f).unwrap(), closed, "recursion l({}, {})", g, f);
                assert_eq!(tensor.coeff(g), closed, "tensor l({}, {})", g, f);
            }
        }
    }
}

#[test]
fn larger_shapes() {
    let rec = LRecursion::new();
    for (m, n, hi) in [(2, 3, 5), (3, 2, 5), (3, 3, 5), (1, 3, 5)] {
        let doms = dominant_box(Shape::new(m, n), 0, hi);
        for f in &doms {
            assert_eq!(u_basis(f).unwrap(), closed_u_vector(f).unwrap(), "U{}", f);
            for g in doms.iter().filter(|g| g.wt() == f.wt()) {
                assert_eq!(closed_l_value(g, f).unwrap(), rec.value(g, f).unwrap(), "l({}, {})", g, f);
            }
        }
        let bad = crystal_iso_check(&doms, -2..=hi + 1).unwrap();
        assert!(bad.is_empty(), "{:?}", bad.first());
    }
}

#[test]
fn crystal_isomorphism() {
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let doms = dominant_box(Shape::new(m, n), 0, 4);
        let bad = crystal_iso_check(&doms, -2..=6).unwrap();
        assert!(bad.is_empty(), "{:?}", bad.first());
    }
}

#[test]
fn worked_u_expansion() {
    let u = u_basis(&w("(0,1,3,4|2,1,0)")).unwrap();
    let expect = [("(0,1,3,4|2,1,0)", 0), ("(0,3,4,5|5,2,0)", 1), ("(1,3,4,6|6,2,1)", 1), ("(3,4,5,6|6,5,2)", 2)];
    assert_eq!(u.len(), expect.len());
    for (g, k) in expect {
        assert_eq!(u.coeff(&w(g)), Poly::q_pow(k), "{}", g);
    }
}

/// f = (0,2,..,2n-2 | 2n-2,..,2,0) and g = f shifted up by 2.
fn chain_pair(n: i64) -> (WeightFn, WeightFn) {
    let up: Vec<i64> = (0..n).map(|k| 2 * k).collect();
    let down: Vec<i64> = up.iter().rev().copied().collect();
    let f = WeightFn::new(&up, &down);
    (f.shifted(2), f)
}

#[test]
fn chain_l_polynomials() {
    let rec = LRecursion::new();
    for n in 2..=4 {
        let (g, f) = chain_pair(n);
        // q^2 (1 + q^2)^(n-1), expanded with binomial coefficients
        let expect = Poly::from_terms((0..n).map(|k| {
            let binom = (0..k).fold(1i64, |acc, i| acc * (n - 1 - i) / (i + 1));
            (2 + 2 * k as i32, binom.into())
        }));
        assert_eq!(closed_l_value(&g, &f).unwrap(), expect, "closed n = {}", n);
        assert_eq!(rec.value(&g, &f).unwrap(), expect, "recursion n = {}", n);
    }
}

fn graded(g: &WeightFn, lower: bool, complement: bool) -> BTreeSet<(WeightFn, usize)> {
    let r = g.atypicality();
    binary_thetas(r)
        .iter()
        .map(|t| {
            let h = if lower { theta_lower(g, t, Variant::Plain) } else { theta_raise(g, t, Variant::Plain) }.unwrap();
            let k = t.iter().filter(|&&x| x == 1).count();
            (h, if complement { r - k } else { k })
        })
        .collect()
}

#[test]
fn shifted_bijection_as_graded_sets() {
    for (m, n, hi) in [(2, 2, 5), (2, 3, 5), (3, 3, 5)] {
        for f in dominant_box(Shape::new(m, n), 0, hi) {
            let rf = bijection_r(&f).unwrap();
            let lf = bijection_l(&f).unwrap();
            assert_eq!(graded(&rf, true, false), graded(&f, false, true), "L_θ R {}", f);
            assert_eq!(graded(&lf, false, false), graded(&f, true, true), "R_θ L {}", f);
        }
    }
}

#[test]
fn shifted_bijection_is_not_termwise() {
    // L_θ(R f) need not equal R_φ(f) for the complementary φ of the same θ.
    let f = w("(0,2|2,0)");
    let rf = bijection_r(&f).unwrap();
    assert_eq!(rf, w("(-1,1|1,-1)"));
    let lhs = theta_lower(&rf, &[1, 0], Variant::Plain).unwrap();
    assert_eq!(lhs, w("(0,1|1,0)"));
    assert_ne!(theta_raise(&f, &[1, 0], Variant::Plain).unwrap(), lhs);
    assert_ne!(theta_raise(&f, &[0, 1], Variant::Plain).unwrap(), w("(-1,2|2,-1)"));
    assert_eq!(theta_raise(&f, &[0, 1], Variant::Plain).unwrap(), lhs);
}

fn atypical_2_2() -> impl Strategy<Value = WeightFn> {
    (0i64..6, 1i64..4).prop_map(|(a, da)| WeightFn::new(&[a, a + da], &[a + da, a]))
}

fn dominant_2_2() -> impl Strategy<Value = WeightFn> {
    (0i64..6, 1i64..4, 0i64..6, 1i64..4).prop_map(|(a, da, b, db)| WeightFn::new(&[a, a + da], &[b + db, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn u_terms_come_from_lowering(f in dominant_2_2()) {
        // u_{g,f} = q^{|θ|} exactly when g = L_θ(f)
        let u = u_basis(&f).unwrap();
        let r = f.atypicality();
        prop_assert_eq!(u.len(), 1 << r);
        for t in binary_thetas(r) {
            let g = theta_lower(&f, &t, Variant::Plain).unwrap();
            let k: u32 = t.iter().sum();
            prop_assert_eq!(u.coeff(&g), Poly::q_pow(k as i32));
        }
    }

    #[test]
    fn l_degree_and_parity(f in atypical_2_2(), g in atypical_2_2()) {
        let l = closed_l_poly(&g, &f).unwrap();
        if g == f {
            prop_assert_eq!(l, Poly::one());
        } else if !l.is_zero() {
            // l(q) lies in q^-1 Z[q^-1] and all exponents share one parity
            prop_assert!(l.max_degree().unwrap() < 0);
            let par = l.min_degree().unwrap().rem_euclid(2);
            prop_assert!(l.terms().all(|(k, _)| k.rem_euclid(2) == par));
        }
    }

    #[test]
    fn l_and_r_are_inverse(f in dominant_2_2()) {
        prop_assert_eq!(bijection_l(&bijection_r(&f).unwrap()).unwrap(), f.clone());
        prop_assert_eq!(bijection_r(&bijection_l(&f).unwrap()).unwrap(), f);
    }
}
