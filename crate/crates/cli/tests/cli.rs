use std::io::Write;

use eq2cli::run;
use serde_json::Value;

fn json(args: &[&str]) -> Value {
    let out = run(args.iter().copied());
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn haar_normalization_of_one() {
    let v = json(&["eq2", "rep", "integral", "--group", "suq2", "--expr", "1", "--q", "0.5"]);
    assert!((v["value"][0].as_f64().unwrap() - 1.0).abs() <= 1e-12);
    assert_eq!(v["value"][1].as_f64().unwrap(), 0.0);
}

#[test]
fn verify_hopf_exits_zero() {
    let out = run(["eq2", "verify", "hopf", "--q", "0.7"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["items"][0]["criterion"], 3);
    assert!(out.stderr.starts_with("PASS C3"));
}

#[test]
fn gram_defaults_to_csv_with_negative_bounds() {
    let out = run(["eq2", "plancherel", "gram", "--i", "0", "--j", "0", "--side", "r", "--mmin", "-3", "--mmax", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("side,i,j,i2,j2,m,m2,re,im"));
    assert_eq!(out.stdout.lines().count(), 1 + 49);
    let mut diag = 0.0f64;
    let mut off = 0.0f64;
    for l in lines {
        let f: Vec<&str> = l.split(',').collect();
        let v = f[7].parse::<f64>().unwrap().hypot(f[8].parse::<f64>().unwrap());
        if f[5] == f[6] {
            diag = diag.max(v);
        } else {
            off = off.max(v);
        }
    }
    assert!(off <= 1e-6 * diag);
}

#[test]
fn exit_codes() {
    assert_eq!(run(["eq2", "algebra", "normal-order", "--group", "suq2", "--expr", "x^-1"]).code, 2);
    assert_eq!(run(["eq2", "algebra", "normal-order", "--group", "eq2", "--expr", "x"]).code, 2);
    assert_eq!(run(["eq2", "no-such-command"]).code, 2);
    assert_eq!(run(["eq2", "--q", "1.5", "verify", "hopf"]).code, 2);
    assert_eq!(run(["eq2", "matel", "eq", "--p", "-1", "--i", "0", "--j", "0"]).code, 2);
    let div = run(["eq2", "qseries", "eval", "phi21", "--a", "0.3", "--b", "0.2", "--c", "0.1", "--x", "5", "--q", "0.5"]);
    assert_eq!(div.code, 3, "{}", div.stderr);
    let nc = run(["eq2", "matel", "classical", "--p-rho", "0", "--k", "0", "--j", "0", "--l", "1,3,7"]);
    assert_eq!(nc.code, 3, "{}", nc.stderr);
    let bad = run(["eq2", "algebra", "normal-order", "--group", "eq2", "--expr", "z + * zs"]);
    assert!(bad.stderr.contains("at byte 4"), "{}", bad.stderr);
    assert_eq!(run(["eq2", "--help"]).code, 0);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["eq2", "matel", "eq", "--p", "1.3", "--i", "1", "--j", "-1"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["counit"][0].as_f64().unwrap(), 0.0);
    let s = run(["eq2", "verify", "orthogonality"]);
    let t = run(["eq2", "verify", "orthogonality"]);
    assert_eq!((s.code, &s.stdout), (t.code, &t.stdout));
    assert!(!s.stdout.contains("\"seconds\""));
    assert!(run(["eq2", "verify", "hopf", "--timings"]).stdout.contains("\"seconds\""));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = std::env::temp_dir().join(format!("eq2-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# test\nq = 0.5\noutput = csv").unwrap();
    drop(f);
    let p = path.to_str().unwrap();
    let out = run(["eq2", "--config", p, "rep", "integral", "--group", "suq2", "--expr", "u us"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("path,value\n"));
    assert!(out.stdout.contains("q,0.5\n"));
    let out = run(["eq2", "--config", p, "--q", "0.6", "--output", "json", "rep", "integral", "--group", "suq2", "--expr", "u us"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["q"].as_f64(), Some(0.6));
    assert!((v["value"][0].as_f64().unwrap() - 1.0 / 1.36).abs() < 1e-12);
    std::fs::write(&path, "q = 2\n").unwrap();
    assert_eq!(run(["eq2", "--config", p, "verify", "hopf"]).code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn expressions_flow_through_commands() {
    let v = json(&["eq2", "algebra", "normal-order", "--group", "eq2", "--expr", "d^-1 * z"]);
    assert_eq!(v["result"]["canonical"], "1 * d^-1 z");
    let v = json(&["eq2", "algebra", "antipode", "--group", "suq2", "--expr", "u"]);
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 1);
    let v = json(&["eq2", "algebra", "bigrade", "--group", "eq2", "--expr", "d^1/2 z"]);
    assert_eq!(v["result"]["i"].as_f64(), Some(1.5));
    assert_eq!(v["result"]["j"].as_f64(), Some(0.5));
    let v = json(&["eq2", "rep", "inner", "--expr", "z * f(rho2; 0:1, 1:0.5)", "--side", "l"]);
    assert!(v["value"][0].as_f64().unwrap() > 0.0);
    let v = json(&["eq2", "rep", "matrix", "--group", "eq2", "--expr", "z", "--lo", "-3", "--hi", "3"]);
    assert_eq!(v["bands"].as_array().unwrap().len(), 1);
    let v = json(&["eq2", "matel", "su", "--l", "1/2", "--i", "1/2", "--j", "-1/2"]);
    assert_eq!(v["counit"][0].as_f64(), Some(0.0));
}

#[test]
fn plancherel_commands() {
    let v = json(&["eq2", "plancherel", "fit", "--k", "1", "--mmin", "-1", "--mmax", "1"]);
    let (c, closed) = (v["c"].as_f64().unwrap(), v["closed_form"].as_f64().unwrap());
    assert!((c / closed - 1.0).abs() < 1e-10);
    let v = json(&[
        "eq2", "plancherel", "roundtrip", "--expr", "f(rho2; 0:1, 1:0.5)", "--mmin", "-30", "--mmax", "60",
    ]);
    assert!(v["max_deviation"].as_f64().unwrap() <= 1e-6);
    let out = run(["eq2", "plancherel", "transform", "--expr", "z * f(rho2; 0:1)", "--mmin", "0", "--mmax", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("m,i,j,re,im\n"));
}

#[test]
fn failed_verification_exits_one() {
    let out = run(["eq2", "--window", "64", "verify", "orthogonality"]);
    assert_eq!(out.code, 1, "{}", out.stderr);
    assert!(out.stderr.contains("FAIL C9"));
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], Value::Bool(false));
}
