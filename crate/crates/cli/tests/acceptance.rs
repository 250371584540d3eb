//! Acceptance criteria 1-9. Each criterion prints one PASS/FAIL line to
//! stderr (bypassing the test harness capture); the test fails at the end
//! if any line is FAIL. Run with `cargo test -p superkl-cli --test acceptance`.
//!
//! Tolerances: every comparison is exact over the integers. Runtime
//! limits are wall-clock bounds on a single CLI invocation.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use superkl::canonical::{positivity_scan, BumpStart, Canonical, Family, Route};
use superkl::checks::{run_all, BoxSpec};
use superkl::exterior::{closed_l_poly, closed_u_vector, u_basis, u_basis_via_tensor, LRecursion};
use superkl::weights::{box_weights, dominant_box};
use superkl::{Poly, Shape, WeightFn};

const CRITERION_BOXES: [(usize, usize); 3] = [(1, 1), (1, 2), (2, 2)];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn cli(args: &[&str]) -> (Value, Duration) {
    let t0 = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_superkl")).arg("--json").args(args).output().expect("binary runs");
    let elapsed = t0.elapsed();
    assert!(
        out.status.success(),
        "superkl {:?} exited with {:?}: {}",
        args,
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    (serde_json::from_slice(&out.stdout).expect("valid JSON"), elapsed)
}

fn within(elapsed: Duration, limit: u64) -> Outcome {
    if elapsed <= Duration::from_secs(limit) {
        Ok(format!("{:.2} s < {} s", elapsed.as_secs_f64(), limit))
    } else {
        Err(format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), limit))
    }
}

fn poly(s: &str) -> Poly {
    s.parse().expect("polynomial literal")
}

fn terms_match(got: &Value, expect: &[(&str, &str)]) -> Outcome {
    let map = got.as_object().ok_or("terms is not an object")?;
    if map.len() != expect.len() {
        return Err(format!("{} terms, expected {}", map.len(), expect.len()));
    }
    for (g, c) in expect {
        let found = map.get(*g).and_then(Value::as_str).ok_or(format!("missing term {}", g))?;
        if poly(found) != poly(c) {
            return Err(format!("coefficient of {} is {}, expected {}", g, found, c));
        }
    }
    Ok(format!("{} terms exact", expect.len()))
}

fn golden_t() -> Outcome {
    let (v, t) = cli(&["tpoly", "-m", "3", "-n", "3", "-f", "(0,4,1|0,2,3)", "-d", "4"]);
    let exact = terms_match(
        &v["terms"],
        &[
            ("(0,4,1|0,2,3)", "1"),
            ("(1,4,0|0,2,3)", "q"),
            ("(4,0,1|0,2,3)", "q"),
            ("(1,4,1|1,2,3)", "q^2"),
            ("(4,1,0|0,2,3)", "q^2"),
            ("(4,1,1|1,2,3)", "q^3"),
        ],
    )?;
    Ok(format!("{}, {}", exact, within(t, 5)?))
}

fn golden_u() -> Outcome {
    // The CLI exits 4 unless procedure, closed formula and tensor route agree.
    let (v, t) = cli(&["upoly", "-m", "4", "-n", "3", "-f", "(0,1,3,4|2,1,0)"]);
    let exact = terms_match(
        &v["terms"],
        &[("(0,1,3,4|2,1,0)", "1"), ("(0,3,4,5|5,2,0)", "q"), ("(1,3,4,6|6,2,1)", "q"), ("(3,4,5,6|6,5,2)", "q^2")],
    )?;
    let routes = v["routes"].as_array().map_or(0, |r| r.len());
    if routes != 3 {
        return Err(format!("{} routes reported", routes));
    }
    Ok(format!("{} by 3 routes, {}", exact, within(t, 10)?))
}

fn golden_l() -> Outcome {
    for n in 2..=4i64 {
        let up: Vec<String> = (0..n).map(|k| (2 * k).to_string()).collect();
        let down: Vec<String> = up.iter().rev().cloned().collect();
        let f = format!("({}|{})", up.join(","), down.join(","));
        let gup: Vec<String> = (0..n).map(|k| (2 * k + 2).to_string()).collect();
        let gdown: Vec<String> = gup.iter().rev().cloned().collect();
        let g = format!("({}|{})", gup.join(","), gdown.join(","));
        // The CLI exits 4 unless recursion and closed formula agree.
        let (v, _) = cli(&["lpoly", "-g", &g, "-f", &f]);
        let got = poly(v["l_at_neg_inv_q"].as_str().ok_or("no value")?);
        let expect = poly("q^2") * poly("1 + q^2").pow(n as u32 - 1);
        if got != expect {
            return Err(format!("n = {}: got {}, expected {}", n, got, expect));
        }
    }
    Ok("n = 2, 3, 4 exact by recursion and closed formula".into())
}

/// Coefficients of Π_{k≤r} (1 - q^{2k})^{-1} up to `cap`.
fn partition_counts(r: u32, cap: u32) -> Vec<i64> {
    let mut c = vec![0i64; cap as usize + 1];
    c[0] = 1;
    for k in 1..=r {
        let step = 2 * k as usize;
        for d in step..c.len() {
            c[d] += c[d - step];
        }
    }
    c
}

fn ext_series() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (m, n) in [(1usize, 1usize), (2, 2), (2, 3)] {
        let zero = format!("X:({}|{})", vec!["0"; m].join(","), vec!["0"; n].join(","));
        let (v, t) = cli(&["ext", "--mu", &zero, "--lambda", &zero, "--degree", "12"]);
        slowest = slowest.max(t);
        let got = poly(v["series"].as_str().ok_or("no series")?);
        let expect = partition_counts(m.min(n) as u32, 12);
        for (d, c) in expect.iter().enumerate() {
            let have = got.coeff(d as i32);
            if have != (*c).into() {
                return Err(format!("{}|{} degree {}: {} vs {}", m, n, d, have, c));
            }
        }
        if got.max_degree().unwrap_or(0) > 12 {
            return Err(format!("{}|{} has terms above the cap", m, n));
        }
    }
    Ok(format!("1|1, 2|2, 2|3 through degree 12, {}", within(slowest, 60)?))
}

fn one_one_families() -> Outcome {
    let canon = Canonical::default();
    let (lo, hi) = (-1i64, 4i64);
    let d = hi + 4;
    let q = Poly::q_pow;
    let mut count = 0;
    for a in lo..=hi {
        for b in lo..=hi {
            let f = WeightFn::new(&[a], &[b]);
            let mut t_expect = vec![(f.clone(), q(0))];
            let mut l_expect = vec![(f.clone(), q(0))];
            if a == b {
                t_expect.push((WeightFn::new(&[a + 1], &[a + 1]), q(1)));
                l_expect = (0..=d - a).map(|k| (WeightFn::new(&[a + k], &[a + k]), (-q(-1)).pow(k as u32))).collect();
            }
            for (name, got, expect) in [("T", canon.t_basis(&f, d), t_expect), ("L", canon.l_basis(&f, d), l_expect)] {
                let got = got.map_err(|e| e.to_string())?;
                if got.len() != expect.len() || expect.iter().any(|(g, c)| got.coeff(g) != *c) {
                    return Err(format!("{}{} at d = {}", name, f, d));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{} elements exact on values [{}, {}], d = {}", count, lo, hi, d))
}

fn oracle_equivalence() -> Outcome {
    let mut entries = 0usize;
    for (m, n) in CRITERION_BOXES {
        let shape = Shape::new(m, n);
        let fs = box_weights(shape, 0, 4);
        let canon = Canonical::default();
        let t_oracle = canon.table(&fs, 4, Family::T, Route::Oracle).map_err(|e| e.to_string())?;
        for start in [BumpStart::Positive, BumpStart::Negative, BumpStart::Shortest] {
            let fast = Canonical::new(start).table(&fs, 4, Family::T, Route::Fast).map_err(|e| e.to_string())?;
            if fast != t_oracle {
                return Err(format!("{}|{}: bumping ({:?}) differs from the solver", m, n, start));
            }
        }
        let l_oracle = canon.table(&fs, 4, Family::L, Route::Oracle).map_err(|e| e.to_string())?;
        let l_inv = canon.table(&fs, 4, Family::L, Route::Fast).map_err(|e| e.to_string())?;
        if l_oracle != l_inv {
            return Err(format!("{}|{}: L by inversion differs from the solver", m, n));
        }
        let doms = dominant_box(shape, 0, 4);
        let rec = LRecursion::new();
        for f in &doms {
            let u = u_basis(f).map_err(|e| e.to_string())?;
            if u != closed_u_vector(f).map_err(|e| e.to_string())?
                || u != u_basis_via_tensor(&canon, f, None).map_err(|e| e.to_string())?
            {
                return Err(format!("u-routes disagree at {}", f));
            }
            for g in &doms {
                let closed = closed_l_poly(g, f).map_err(|e| e.to_string())?;
                if closed != rec.l_poly(g, f).map_err(|e| e.to_string())? || closed != l_oracle.get(g, f) {
                    return Err(format!("l-routes disagree at ({}, {})", g, f));
                }
                entries += 1;
            }
        }
        entries += fs.len() * fs.len();
    }
    Ok(format!("t/l/u tables identical, {} entries compared", entries))
}

fn invariant_suites() -> Outcome {
    let canon = Canonical::default();
    let mut checks = 0;
    for (m, n) in CRITERION_BOXES {
        let spec = BoxSpec::new(Shape::new(m, n), 0, 4);
        for rep in run_all(&spec, &canon).map_err(|e| e.to_string())? {
            if !rep.passed() {
                return Err(format!("{} on {}|{}: {}", rep.name, m, n, rep.failures[0]));
            }
            checks += rep.checked;
        }
    }
    Ok(format!("all suites green, {} checks", checks))
}

fn positivity() -> Outcome {
    let canon = Canonical::default();
    let mut columns = 0;
    for (m, n) in CRITERION_BOXES {
        let rep = positivity_scan(&canon, &box_weights(Shape::new(m, n), 0, 4), 4).map_err(|e| e.to_string())?;
        if let Some((fam, g, f, p)) = rep.violations.first() {
            return Err(format!("{}_{{{},{}}} = {} on {}|{}", fam, g, f, p, m, n));
        }
        columns += rep.checked;
    }
    Ok(format!("no violations in {} columns (empirical check of a conjecture)", columns))
}

fn out_of_scope() -> Outcome {
    Ok("excluded by scope: geometric and category O statements are not computable at this scale".into())
}

fn report(line: String) {
    let _ = writeln!(std::io::stderr().lock(), "{}", line);
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (1, "golden T-basis", golden_t),
        (2, "golden U-basis", golden_u),
        (3, "golden l-polynomials", golden_l),
        (4, "Ext generating function", ext_series),
        (5, "1|1 canonical families", one_one_families),
        (6, "oracle equivalence", oracle_equivalence),
        (7, "invariant suites", invariant_suites),
        (8, "positivity scan", positivity),
        (9, "full-scale claims", out_of_scope),
    ];
    let mut failed = Vec::new();
    for (k, name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => report(format!("criterion {}: PASS  {}: {}", k, name, detail)),
            Err(why) => {
                report(format!("criterion {}: FAIL  {}: {}", k, name, why));
                failed.push(k);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
