use std::path::Path;
use std::process::{Command, Output};

fn cocycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cocycle")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn missing_file_is_malformed_input() {
    let o = cocycle(&["validate", "missing.alg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn garbage_file_is_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, "{\"format_version\": 9}").unwrap();
    assert_eq!(cocycle(&["validate", p(&f)]).status.code(), Some(2));
    assert_eq!(cocycle(&["suite", "dim32-f1", "--a", "1/0"]).status.code(), Some(2));
}

#[test]
fn q_identities_json_report() {
    let o = cocycle(&["suite", "q-identities", "--report", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["overall"], "pass");
    assert!(v["lines"].as_array().unwrap().iter().all(|l| l.as_str().unwrap().ends_with(": pass")));
}

#[test]
fn dim81_json_report_contains_nilpotency_line() {
    let o = cocycle(&["suite", "dim81", "--report", "json", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["lines"].as_array().unwrap().iter().any(|l| l == "(alpha-eps)^3 = 0: pass"));
    assert_eq!(v["seed"], 3);
}

#[test]
fn qlp_extraction_fails_trichotomy_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let o = cocycle(&["suite", "qlp-demo", "--dump", p(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = cocycle(&["trichotomy", p(&dir.path().join("extracted.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(i) m_R associative: fail  [witness: (x2, x1, x1)]"));
}

#[test]
fn dumped_objects_drive_the_file_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = cocycle(&["suite", "dim32-f2", "--a1", "2", "--a2=-1", "--a", "1/2", "--dump", p(d)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let (alg, gamma, proj, lift) = (d.join("biproduct.json"), d.join("gamma.json"), d.join("projection.json"), d.join("lifting.json"));

    assert_eq!(cocycle(&["validate", p(&alg), "--level", "hopf"]).status.code(), Some(0));
    let o = cocycle(&["verify-cocycle", p(&alg), p(&gamma), "--hopf-sub", p(&proj)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H-balanced: pass"));

    let tw = d.join("twisted.json");
    assert_eq!(cocycle(&["twist", p(&alg), p(&gamma), "-o", p(&tw)]).status.code(), Some(0));
    // A^γ is the lifting, so the dumps agree byte for byte
    assert_eq!(std::fs::read(&tw).unwrap(), std::fs::read(&lift).unwrap());

    let r = d.join("r.json");
    let out = d.join("report.txt");
    let o = cocycle(&["extract", p(&lift), "--pi", p(&proj), "-o", p(&r), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out).unwrap().contains("ω bijective: pass"));
    assert_eq!(cocycle(&["trichotomy", p(&r), "--jobs", "1"]).status.code(), Some(0));
}

#[test]
fn broken_cocycle_is_a_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(cocycle(&["suite", "dim32-f1", "--dump", p(d)]).status.code(), Some(0));
    let g = d.join("gamma.json");
    // γ(1⊗1) = 2 breaks normalization
    let text = std::fs::read_to_string(&g).unwrap();
    assert!(text.contains("[0,0,\"1\"]"));
    std::fs::write(&g, text.replacen("[0,0,\"1\"]", "[0,0,\"2\"]", 1)).unwrap();
    let o = cocycle(&["verify-cocycle", p(&d.join("biproduct.json")), p(&g)]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("2-cocycle: fail  [witness: cocycle normalization"));
}
