use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superkl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["tpoly", "-f", "(0,1|2)"]).status.code(), Some(0));
    assert_eq!(run(&["tpoly", "-f", "(0,1|2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["tpoly", "-m", "2", "-n", "2", "-f", "(0,1|2)"]).status.code(), Some(3));
    assert_eq!(run(&["tpoly", "-f", "(0,1|2)", "-d", "1"]).status.code(), Some(3));
    assert_eq!(run(&["upoly", "-f", "(1,0|0,1)"]).status.code(), Some(3));
    assert_eq!(run(&["check", "-m", "1", "-n", "1", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn both_weight_literals() {
    let a = run(&["--json", "upoly", "-f", "(0|0)"]);
    let b = run(&["--json", "upoly", "-f", "X:(-1|1)"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn check_reports_every_suite() {
    let o = run(&["check", "-m", "1", "-n", "2", "--box", "0..3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), superkl::checks::SUITES.len());
    assert!(text.contains("conjecture"));
}

#[test]
fn decomposition_csv() {
    let o = run(&["--csv", "decomp", "-m", "1", "-n", "1", "--box", "0..2"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "mu");
    for row in lines {
        assert_eq!(row.split(',').count(), header.len());
    }
    // each column (a simple module) appears in exactly 2^#λ Kac modules
    let expect: usize =
        header[1..].iter().map(|l| 1 << l.parse::<superkl::GlWeight>().unwrap().rho_shift().atypicality()).sum();
    let ones: usize = text.lines().skip(1).map(|r| r.split(',').skip(1).filter(|c| *c == "1").count()).sum();
    assert_eq!(ones, expect);
}

#[test]
fn crystal_dot_output() {
    let o = run(&["--dot", "crystal", "-m", "1", "-n", "1", "--box", "0..2"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph crystal {"));
    assert!(text.trim_end().ends_with('}'));
    assert!(text.contains("->"));
}

#[test]
fn json_keys_are_sorted() {
    let o = run(&["--json", "tpoly", "-f", "(0,4,1|0,2,3)", "-d", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["terms"].as_object().unwrap().len(), 6);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("superkl-out-{}.txt", std::process::id()));
    let o = run(&["-o", path.to_str().unwrap(), "block", "--lambda", "(0,2|2,0)"]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.contains("atypicality 2"));
}
