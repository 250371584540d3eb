use superkl::canonical::Canonical;
use superkl::checks::{run_all, run_suite, BoxSpec, SUITES};
use superkl::Shape;

#[test]
fn every_suite_on_small_boxes() {
    let canon = Canonical::default();
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let spec = BoxSpec::new(Shape::new(m, n), 0, 4);
        for rep in run_all(&spec, &canon).unwrap() {
            // S_1 x S_1 has no simple reflections, so the Hecke suite is empty there
            let vacuous = rep.name == "hecke" && m == 1 && n == 1;
            assert!(rep.checked > 0 || vacuous, "{} checked nothing on {}|{}", rep.name, m, n);
            assert!(rep.passed(), "{} on {}|{}: {:?}", rep.name, m, n, rep.failures.first());
        }
    }
}

#[test]
fn suites_on_a_shifted_window() {
    let canon = Canonical::default();
    let spec = BoxSpec::new(Shape::new(1, 2), -2, 2);
    for name in SUITES {
        let rep = run_suite(name, &spec, &canon).unwrap();
        assert!(rep.passed(), "{}: {:?}", name, rep.failures.first());
    }
}

#[test]
fn unknown_suite_is_rejected() {
    let spec = BoxSpec::new(Shape::new(1, 1), 0, 2);
    assert!(run_suite("no-such-suite", &spec, &Canonical::default()).is_err());
}
