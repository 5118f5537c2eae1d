use std::io::Cursor;

use serde_json::Value;
use trivalent_cli::{run, run_with_io, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["trivalent"];
    full.extend_from_slice(args);
    full.push("--json");
    let out = run(&full);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", out));
    (out.code, v)
}

fn text(args: &[&str]) -> (i32, String) {
    let mut full = vec!["trivalent"];
    full.extend_from_slice(args);
    let out = run(&full);
    (out.code, out.stdout + &out.stderr)
}

#[test]
fn validate_builtin_as_json() {
    let out = run(&["trivalent", "code", "validate", "five_qubit", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.trim(), r#"{"k":1,"n":5,"valid":true}"#);
    for (name, n) in [("shor", 9), ("steane", 7)] {
        let (code, v) = json(&["code", "validate", name]);
        assert_eq!((code, v["n"].as_u64(), v["k"].as_u64()), (EXIT_OK, Some(n), Some(1)));
    }
}

#[test]
fn validate_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("toric.txt");
    std::fs::write(&good, "# two checks\nZZII\n\n+IZZI\n").unwrap();
    let (code, v) = json(&["code", "validate", good.to_str().unwrap()]);
    assert_eq!((code, v["k"].as_u64()), (EXIT_OK, Some(2)));
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "XI\nZI\n").unwrap();
    let (code, v) = json(&["code", "validate", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(v["valid"], false);
    assert!(v["error"].as_str().unwrap().contains("anticommute"));
    let (code, _) = text(&["code", "validate", "no_such_code"]);
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn usage_errors() {
    let (code, msg) = text(&["bogus"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(msg.contains("Usage"));
    assert_eq!(text(&["algebra", "check-axioms", "--frobnicate"]).0, EXIT_USAGE);
    assert_eq!(text(&["ulam", "simulate"]).0, EXIT_USAGE);
    assert_eq!(text(&["ulam", "simulate", "-n", "ten"]).0, EXIT_USAGE);
    let (code, help) = text(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(help.contains("ulam"));
}

#[test]
fn algebra_commands() {
    let (code, out) = text(&["algebra", "table", "oplus"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split('|').nth(1).unwrap().split_whitespace().collect()).collect();
    assert_eq!(rows, vec![vec!["0", "1/2", "1"], vec!["1/2", "1", "1"], vec!["1", "1", "1"]]);
    let (_, v) = json(&["algebra", "table", "implies"]);
    assert_eq!(v["table"][1], serde_json::json!(["1/2", "1", "1"]));
    assert_eq!(text(&["algebra", "table", "xor"]).0, EXIT_DOMAIN);
    let (code, v) = json(&["algebra", "check-axioms", "-n", "1"]);
    assert_eq!((code, &v["all_passed"]), (EXIT_OK, &Value::Bool(true)));
    let (_, v) = json(&["algebra", "homs", "-n", "2"]);
    assert_eq!(v["count"], 2);
}

#[test]
fn cubic_commands() {
    let (code, v) = json(&["cubic", "compare", "--n", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["pairs"], 9);
    assert_eq!(v["entries"].as_array().unwrap().len(), 9);
    let (code, v) = json(&["cubic", "check-axioms", "--n", "2"]);
    assert_eq!((code, &v["all_passed"]), (EXIT_OK, &Value::Bool(true)));
    assert_eq!(text(&["cubic", "compare", "--n", "4"]).0, EXIT_DOMAIN);
}

#[test]
fn code_commands() {
    let (_, v) = json(&["code", "classify", "five_qubit", "ZIIII", "XZZXI", "XXXXX", "ZZZZZ"]);
    let kinds: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["detectable", "stabilizer", "logical", "logical"]);
    assert_eq!(v[0]["syndrome"], "1010");
    let (_, v) = json(&["code", "check-set", "five_qubit", "--weight-one"]);
    assert_eq!((v["correctable"].as_bool(), v["pairs"].as_u64()), (Some(true), Some(256)));
    let (_, v) = json(&["code", "check-set", "five_qubit", "--weight-one", "XXXXX"]);
    assert_eq!(v["correctable"], false);
    let (_, v) = json(&["code", "complete", "five_qubit"]);
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
    assert_eq!(text(&["code", "classify", "five_qubit", "XQ"]).0, EXIT_DOMAIN);
    assert_eq!(text(&["code", "classify", "five_qubit", "XX"]).0, EXIT_DOMAIN);
}

#[test]
fn embed_verify_report() {
    let out = run(&["trivalent", "embed", "verify", "--code", "five_qubit"]);
    assert_eq!(out.code, EXIT_OK);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["orthonormal"], true);
    assert_eq!(v["meet_homomorphism"], true);
    assert_eq!(v["commutant_dim"], 64);
    assert_eq!(v["span_dim"], 16);
}

#[test]
fn ulam_commands() {
    let (_, v) = json(&["ulam", "minq", "-n", "10"]);
    assert_eq!((v["questions"].as_u64(), v["method"].as_str()), (Some(7), Some("minimax")));
    let (_, v) = json(&["ulam", "minq", "-n", "1000000"]);
    assert_eq!((v["questions"].as_u64(), v["method"].as_str()), (Some(25), Some("character_bound")));
    let (code, v) = json(&["ulam", "simulate", "-n", "10", "--secret", "7", "--lie-round", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!((v["verdict"].as_u64(), v["lie_detected_round"].as_u64()), (Some(7), Some(3)));
    let round = &v["rounds"][0];
    for key in ["question", "answer", "a", "b", "weight"] {
        assert!(round.get(key).is_some(), "missing {key}");
    }
    let (_, a) = json(&["ulam", "simulate", "-n", "50", "--seed", "9"]);
    let (_, b) = json(&["ulam", "simulate", "-n", "50", "--seed", "9"]);
    assert_eq!(a, b);
    let (_, v) = json(&["ulam", "simulate", "-n", "2", "--adversarial"]);
    assert_eq!(v["rounds"].as_array().unwrap().len(), 3);
    assert_eq!(text(&["ulam", "simulate", "-n", "4", "--secret", "4"]).0, EXIT_DOMAIN);
    assert_eq!(text(&["ulam", "simulate", "-n", "0"]).0, EXIT_DOMAIN);
}

#[test]
fn ulam_quantum_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.txt");
    std::fs::write(&path, "ZZII\nIZZI\n").unwrap();
    for lie in ["1", "3", "5"] {
        let (code, v) = json(&["ulam", "quantum", "--code", path.to_str().unwrap(), "--secret", "1", "--lie-round", lie]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(v["transcript"]["verdict"], 1);
    }
    assert_eq!(text(&["ulam", "quantum", "--code", path.to_str().unwrap(), "--secret", "4"]).0, EXIT_DOMAIN);
}

#[test]
fn ulam_play_reads_answers() {
    let args: Vec<String> = ["trivalent", "ulam", "play", "-n", "4"].iter().map(|s| s.to_string()).collect();
    let mut input = Cursor::new("maybe\nno\nno\nno\nno\nno\nno\n");
    let mut out = Vec::new();
    let code = run_with_io(&args, &mut input, &mut out);
    let out = String::from_utf8(out).unwrap();
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("expected yes or no"));
    assert!(out.contains("Your number is"));
    let mut short = Cursor::new("no\n");
    let mut sink = Vec::new();
    assert_eq!(run_with_io(&args, &mut short, &mut sink), EXIT_DOMAIN);
}
