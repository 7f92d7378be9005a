use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn valuator(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valuator")).args(args).output().expect("binary runs")
}

fn corpus(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel).display().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

#[test]
fn matroid_summary() {
    let out = valuator(&["matroid", &corpus("matroids/U2_4.json")]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "matroid-info");
    assert_eq!(v["rank"], 2);
}

#[test]
fn invariants_and_letter_swap() {
    let u = corpus("matroids/U2_4.json");
    let out = valuator(&["invariant", "augchow", &u]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["value"], json!({"0": 1, "1": 5, "2": 1}));

    let g = stdout_json(&valuator(&["invariant", "g", &u]));
    let swapped = stdout_json(&valuator(&["invariant", "g", &u, "--swap-letters"]));
    let word = |v: &Value| v["value"].as_object().unwrap().keys().next().unwrap().clone();
    let flip: String = word(&g).chars().map(|c| if c == 'x' { 'y' } else { 'x' }).collect();
    assert_eq!(word(&swapped), flip);
    assert_eq!(g["value"][word(&g)], 24);
}

#[test]
fn octahedron_is_exact_and_deterministic() {
    let d = corpus("octahedron/decomp.json");
    let a = valuator(&["complex", &d, "--functor", "os", "--seed", "7"]);
    let b = valuator(&["complex", &d, "--functor", "os", "--seed", "7"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn characters_are_keyed_by_cycle_type() {
    let out = valuator(&["equivariant", "characters", &corpus("octahedron/square.json"), "--functor", "tau"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"1,1,1,1\""), "{text}");
    assert!(text.contains("\"2,2"), "{text}");
}

#[test]
fn determinant_of_the_square() {
    let out = valuator(&["equivariant", "det", &corpus("octahedron/square.json"), "--perm", "(1,3)(2,4)"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["sign"], -1);
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(valuator(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(valuator(&["matroid", "/nonexistent/file.json"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "m.json", &json!({"ground": ["1", "2"], "bases": [["1"], ["2"]]}));
    assert_eq!(valuator(&["invariant", "nonsense", p.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn invalid_matroids_exit_two() {
    let dir = TempDir::new().unwrap();
    // {1,2} and {3,4} violate basis exchange
    let p = write(&dir, "bad.json", &json!({"ground": ["1", "2", "3", "4"], "bases": [["1", "2"], ["3", "4"]]}));
    let out = valuator(&["matroid", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn failed_identity_exits_three_with_a_report() {
    let out = valuator(&["relax", &corpus("matroids/K4.json"), "--flat", "1,2,4", "--automorphisms"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let relaxed = stdout_json(&out);
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "d.json", &relaxed["decomposition"]);
    let p = p.to_str().unwrap();
    assert!(valuator(&["complex", p, "--functor", "tau"]).status.success());
    let bad = valuator(&["complex", p, "--functor", "whitney:2"]);
    assert_eq!(bad.status.code(), Some(3));
    let report = stdout_json(&bad);
    assert_eq!(report["exact"], false);
    assert!(report["error"].as_str().unwrap().contains("square to zero"));
}

#[test]
fn catalog_export_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = valuator(&["catalog", "export", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let m = dir.path().join("matroids/U2_4.json");
    let mine = std::fs::read_to_string(m).unwrap();
    let shipped = std::fs::read_to_string(corpus("matroids/U2_4.json")).unwrap();
    assert_eq!(mine, shipped);
    assert!(dir.path().join("octahedron/decomp.json").exists());
}
