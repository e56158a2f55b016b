use std::process::{Command, Output};

fn nhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nhopf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

const SE: &str = "a:1,b:2,c:3";

#[test]
fn associative_coproduct() {
    let o = nhopf(&["--as", "coproduct", "alpha_4"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "E() ⊗ E(alpha_4) + E(alpha_2) ⊗ E(alpha_2 alpha_2) + 2 E(alpha_2) ⊗ E(alpha_3) + 3 E(alpha_3) ⊗ E(alpha_2) + E(alpha_4) ⊗ E()"
    );
    let j = json(&nhopf(&["--as", "--format", "json", "coproduct", "alpha_4"]));
    assert_eq!(j["format_version"], 1);
    assert_eq!(j["terms"].as_array().unwrap().len(), 5);
}

#[test]
fn malformed_forest_is_a_usage_error() {
    let o = nhopf(&["--sig", SE, "coproduct", "c[*,*,*,]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 9"));
}

#[test]
fn domain_errors_exit_one() {
    let o = nhopf(&["fdb", "-r", "1", "-s", "27", "expand", "{a}"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nhopf(&["--sig", "a:0", "lattice", "--word", "a"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nhopf(&["--as", "--basis", "F", "coproduct", "alpha_2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nhopf(&["coproduct", "a[*]"]).status.code(), Some(2));
    assert_eq!(nhopf(&["--bogus"]).status.code(), Some(2));
    assert_eq!(nhopf(&["--sig", SE, "--format", "dot", "coproduct", "a[*]"]).status.code(), Some(2));
}

#[test]
fn lattice_dot_and_json() {
    let o = nhopf(&["--sig", SE, "lattice", "--word", "cab", "--format", "dot"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("// format_version 1\ndigraph hasse {"));
    assert_eq!(dot.matches(" -> ").count(), 14);
    assert_eq!(dot.lines().filter(|l| l.ends_with("\";") && !l.contains("->")).count(), 11);
    let j = json(&nhopf(&["--sig", SE, "lattice", "--word", "c a b", "--format", "json"]));
    assert_eq!(j["top"], "c[a[b[*,*]],*,*]");
    assert_eq!(j["edges"].as_array().unwrap().len(), 14);
}

#[test]
fn basis_products_and_conversion() {
    let o = nhopf(&["--sig", SE, "--basis", "H", "product", "c[*,*,*]", "a[*]"]);
    assert_eq!(stdout(&o).trim(), "H(c[a[*],*,*])");
    let o = nhopf(&["--sig", SE, "--basis", "F", "convert", "c[*,a[*],*] b[*,*]", "--to", "E"]);
    assert_eq!(
        stdout(&o).trim(),
        "E(c[*,a[*],*] b[*,*]) - E(c[*,a[*],b[*,*]]) - E(c[a[*],*,*] b[*,*]) + E(c[a[*],*,b[*,*]])"
    );
}

#[test]
fn wqsym_and_fdb() {
    let o = nhopf(&["expand-wqsym", "c[*,b[*,*],b[*,*]]"]);
    assert_eq!(stdout(&o).trim(), "M(122) + M(123) + M(132)");
    let j = json(&nhopf(&["--format", "json", "fdb", "-r", "1", "-s", "2", "expand", "{a,a,b} {a}"]));
    let coeffs: Vec<&str> = j["groups"].as_array().unwrap().iter().map(|g| g["coeff"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["4", "4", "4", "1", "1", "1"]);
    assert_eq!(j["class_size"], 15);
}

#[test]
fn realize_with_level_alphabet() {
    let o = nhopf(&["--sig", SE, "--alphabet", "levels:2", "realize", "a[a[*]]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "a_0 a_1");
    assert_eq!(nhopf(&["--sig", SE, "realize", "a[*]"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--sig", SE, "--format", "json", "lattice", "--word", "cab"];
    assert_eq!(nhopf(&args).stdout, nhopf(&args).stdout);
}

#[test]
fn verify_single_suite() {
    let o = nhopf(&["verify", "--suite", "nck", "--max-degree", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS"));
    assert_eq!(nhopf(&["verify", "--suite", "nope"]).status.code(), Some(1));
}
