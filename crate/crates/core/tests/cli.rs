use std::path::PathBuf;
use std::process::{Command, Output};

fn tlcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlcat"))
        .args(args)
        .env_remove("TLCAT_MAX_STRANDS")
        .output()
        .expect("spawn tlcat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tlcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn enum_lists_encodings() {
    let o = tlcat(&["enum", "2", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2:2:(())\n2:2:()()\n");
    let o = tlcat(&["enum", "3", "3", "--format", "json"]);
    let v: Vec<String> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 5);
}

#[test]
fn jw_output_feeds_compose_and_trace() {
    let f = scratch("f3.json");
    let o = tlcat(&["jw", "3", "-o", f.to_str().unwrap()]);
    assert!(o.status.success());
    let fs = f.to_str().unwrap();
    let sq = tlcat(&["compose", fs, fs]);
    assert!(sq.status.success());
    assert_eq!(stdout(&sq).trim(), std::fs::read_to_string(&f).unwrap().trim());
    let t = tlcat(&["trace", fs]);
    assert_eq!(stdout(&t), "q^-3 + q^-1 + q + q^3\n");
    let g = scratch("f3f3.json");
    let o = tlcat(&["tensor", fs, fs, "-o", g.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(v["m"], 6);
}

#[test]
fn jw_pretty_and_backends() {
    let o = tlcat(&["jw", "2", "--pretty"]);
    assert_eq!(stdout(&o), "1   1\nh1  (-q)/(1 + q^2)\n");
    let o = tlcat(&["jw", "2", "--backend", "float", "--d", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"coeff\":\"(-0.5, 0)\""));
    let o = tlcat(&["jw", "3", "--backend", "cyclotomic", "--order", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("VanishingQuantumInteger"));
}

#[test]
fn mixed_backends_are_rejected() {
    let a = scratch("generic.json");
    let b = scratch("cyclo.json");
    tlcat(&["jw", "2", "-o", a.to_str().unwrap()]);
    tlcat(&["jw", "2", "--backend", "cyclotomic", "--order", "10", "-o", b.to_str().unwrap()]);
    let o = tlcat(&["compose", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BackendMismatch"));
}

#[test]
fn words_round_trip() {
    let o = tlcat(&["words", "reduce", "4: 1 3 2 1 2"]);
    let nf = stdout(&o);
    assert_eq!(nf, "4: d^0; (1..1)(3..2)\n");
    let again = tlcat(&["words", "reduce", nf.trim()]);
    assert_eq!(stdout(&again), nf);
    let o = tlcat(&["words", "reduce", "3: 1 1 2 1"]);
    assert_eq!(stdout(&o), "3: d^1; (1..1)\n");
    assert_eq!(stdout(&tlcat(&["words", "count", "8"])), "1430\n");
}

#[test]
fn gram_and_kernel() {
    assert_eq!(stdout(&tlcat(&["gram", "2", "2", "--det"])), "d^4 - d^2\n");
    let o = tlcat(&["gram", "2", "2", "--det", "--backend", "cyclotomic", "--order", "6"]);
    assert_eq!(stdout(&o), "0 mod Phi_6\n");
    let o = tlcat(&["kernel", "2", "--cyclotomic", "6", "--format", "json"]);
    let lines: Vec<_> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 1);
    let v: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    let o = tlcat(&["kernel", "1", "--cyclotomic", "8"]);
    assert_eq!(stdout(&o), "nullity 0\n");
}

#[test]
fn fusion_bratteli_positivity() {
    assert_eq!(stdout(&tlcat(&["fusion", "2", "3"])), "X2 (x) X3 = X1 + X3 + X5\n");
    let o = tlcat(&["fusion", "2", "2", "--truncate", "5", "--format", "json"]);
    assert_eq!(stdout(&o), "{\"summands\":[[0,1],[2,1]]}\n");
    assert_eq!(tlcat(&["fusion", "4", "1", "--truncate", "5"]).status.code(), Some(1));

    let dot = scratch("b.dot");
    let o = tlcat(&["bratteli", "4", "--truncate", "4", "--dot", dot.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().last(), Some("4: X2:2 X0:2"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph bratteli {"));
    assert!(!text.contains("X3"));

    let o = tlcat(&["positivity", "--d", "1.5", "--max-strands", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["verdict"], "violated");
    assert_eq!(v["verdict"]["level"], 4);
    let o = tlcat(&["positivity", "--d", "-2.5", "--max-strands", "4"]);
    assert!(stdout(&o).ends_with("verdict: admissible\n"));
}

#[test]
fn exit_codes_and_limits() {
    assert_eq!(tlcat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tlcat(&["enum", "x", "1"]).status.code(), Some(2));
    assert_eq!(tlcat(&["jw", "2", "--backend", "cyclotomic"]).status.code(), Some(2));
    assert_eq!(tlcat(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(tlcat(&["trace", "/nonexistent/f.json"]).status.code(), Some(1));

    let o = Command::new(env!("CARGO_BIN_EXE_tlcat"))
        .args(["enum", "4", "4"])
        .env("TLCAT_MAX_STRANDS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SizeLimit"));
}

#[test]
fn verify_suites_are_deterministic() {
    let a = tlcat(&["verify", "diagram", "--seed", "7"]);
    assert!(a.status.success());
    let b = tlcat(&["verify", "diagram", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("PASS diagram.counts"));
    let o = tlcat(&["verify", "morphism", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["suites"].as_array().unwrap().iter().all(|s| s["passed"] == true));
}

#[test]
fn verify_all_passes() {
    let o = tlcat(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("17/17 suites passed"));
}
