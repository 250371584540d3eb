use proptest::prelude::*;
use superkl::canonical::{bumping_plan, positivity_scan, BumpStart, Canonical, Family, Route};
use superkl::tensor::{chevalley_act, hecke_act, hecke_act_inverse, BarInvolution, Generator, TensorVector};
use superkl::weights::box_weights;
use superkl::{Poly, Shape, WeightFn};

fn w(s: &str) -> WeightFn {
    s.parse().unwrap()
}

fn q(k: i32) -> Poly {
    Poly::q_pow(k)
}

#[test]
fn bar_commutes_with_the_action() {
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 2)] {
        let shape = Shape::new(m, n);
        let d = 4;
        let bar = BarInvolution::new(d);
        for f in box_weights(shape, 0, 3) {
            let mf = TensorVector::monomial(&f, d).unwrap();
            let bf = bar.apply(&mf).unwrap();
            assert_eq!(bar.apply(&bf).unwrap(), mf, "involution {}", f);
            for a in -1..d {
                for g in [Generator::E(a), Generator::F(a)] {
                    let lhs = bar.apply(&chevalley_act(&mf, g).unwrap()).unwrap();
                    assert_eq!(lhs, chevalley_act(&bf, g).unwrap(), "{} on {}", g, f);
                }
            }
            for i in shape.generators() {
                let lhs = bar.apply(&hecke_act(&mf, i).unwrap()).unwrap();
                assert_eq!(lhs, hecke_act_inverse(&bf, i).unwrap(), "H_{} on {}", i, f);
            }
        }
    }
}

#[test]
fn bumping_and_solver_agree() {
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let fs = box_weights(Shape::new(m, n), 0, 4);
        let oracle = Canonical::default().table(&fs, 4, Family::T, Route::Oracle).unwrap();
        oracle.check_unitriangular().unwrap();
        for start in [BumpStart::Positive, BumpStart::Negative, BumpStart::Shortest] {
            let fast = Canonical::new(start).table(&fs, 4, Family::T, Route::Fast).unwrap();
            assert_eq!(fast, oracle, "{}|{} {:?}", m, n, start);
        }
    }
}

#[test]
fn dual_basis_two_ways() {
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let fs = box_weights(Shape::new(m, n), 0, 4);
        let c = Canonical::default();
        let solved = c.table(&fs, 4, Family::L, Route::Oracle).unwrap();
        let inverted = c.table(&fs, 4, Family::L, Route::Fast).unwrap();
        solved.check_unitriangular().unwrap();
        assert_eq!(solved, inverted, "{}|{}", m, n);
    }
}

#[test]
fn canonical_elements_are_bar_invariant() {
    let c = Canonical::default();
    for (m, n) in [(1, 2), (2, 2)] {
        let bar = c.bar(4);
        for f in box_weights(Shape::new(m, n), 0, 3) {
            let t = c.t_basis(&f, 4).unwrap();
            let l = c.l_basis(&f, 4).unwrap();
            assert_eq!(bar.apply(&t).unwrap(), t, "T{}", f);
            assert_eq!(bar.apply(&l).unwrap(), l, "L{}", f);
        }
    }
}

#[test]
fn truncation_is_stable() {
    // Raising the bound only adds terms with values above the old bound.
    let c = Canonical::default();
    for f in box_weights(Shape::new(2, 2), 0, 3) {
        for fam in [Family::T, Family::L] {
            let get = |d| match fam {
                Family::T => c.t_basis(&f, d).unwrap(),
                _ => c.l_basis(&f, d).unwrap(),
            };
            let (small, big) = (get(3), get(5));
            assert_eq!(big.project(3), small, "{:?}{}", fam, f);
        }
    }
}

#[test]
fn worked_expansion() {
    let t = Canonical::default().t_basis(&w("(0,4,1|0,2,3)"), 4).unwrap();
    let expect = [
        ("(0,4,1|0,2,3)", 0),
        ("(1,4,0|0,2,3)", 1),
        ("(4,0,1|0,2,3)", 1),
        ("(1,4,1|1,2,3)", 2),
        ("(4,1,0|0,2,3)", 2),
        ("(4,1,1|1,2,3)", 3),
    ];
    assert_eq!(t.len(), expect.len());
    for (g, k) in expect {
        assert_eq!(t.coeff(&w(g)), q(k), "{}", g);
    }
}

/// In the 1|1 case both families are given by explicit formulas.
fn one_one_t(a: i64, b: i64, d: i64) -> Vec<(WeightFn, Poly)> {
    let mut out = vec![(WeightFn::new(&[a], &[b]), q(0))];
    if a == b && a < d {
        out.push((WeightFn::new(&[a + 1], &[a + 1]), q(1)));
    }
    out
}

fn one_one_l(a: i64, b: i64, d: i64) -> Vec<(WeightFn, Poly)> {
    if a != b {
        return vec![(WeightFn::new(&[a], &[b]), q(0))];
    }
    (0..=d - a).map(|k| (WeightFn::new(&[a + k], &[a + k]), (-q(-1)).pow(k as u32))).collect()
}

#[test]
fn one_one_families() {
    let c = Canonical::default();
    let (lo, hi) = (-2, 3);
    let d = hi + 4;
    for a in lo..=hi {
        for b in lo..=hi {
            let f = WeightFn::new(&[a], &[b]);
            for (fam, expect) in [("T", one_one_t(a, b, d)), ("L", one_one_l(a, b, d))] {
                let got = if fam == "T" { c.t_basis(&f, d).unwrap() } else { c.l_basis(&f, d).unwrap() };
                assert_eq!(got.len(), expect.len(), "{}{}", fam, f);
                for (g, p) in expect {
                    assert_eq!(got.coeff(&g), p, "{}{} at {}", fam, f, g);
                }
            }
        }
    }
}

#[test]
fn positivity_on_small_boxes() {
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let fs = box_weights(Shape::new(m, n), 0, 4);
        let rep = positivity_scan(&Canonical::default(), &fs, 4).unwrap();
        assert!(rep.violations.is_empty(), "{:?}", rep.violations.first());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bumping_lowers_atypicality(vals in prop::collection::vec(0i64..5, 4), start in 0usize..3) {
        let f = WeightFn::new(&vals[..2], &vals[2..]);
        prop_assume!(!f.is_typical());
        let start = [BumpStart::Positive, BumpStart::Negative, BumpStart::Shortest][start];
        let plan = bumping_plan(&f, 4, start).unwrap();
        prop_assert!(plan.reduced.atypicality() < f.atypicality());
        prop_assert!(plan.thresholds.windows(2).all(|t| t[0] < t[1]));
        prop_assert_eq!(plan.target, f);
    }

    #[test]
    fn canonical_basis_is_unitriangular(vals in prop::collection::vec(0i64..4, 4)) {
        let f = WeightFn::new(&vals[..2], &vals[2..]);
        let t = Canonical::default().t_basis(&f, 4).unwrap();
        prop_assert_eq!(t.coeff(&f), q(0));
        for (g, c) in t.terms() {
            if g != &f {
                prop_assert!(g.bruhat_lt(&f));
                prop_assert!(c.min_degree().unwrap() >= 1, "{} at {}", c, g);
            }
        }
    }
}
