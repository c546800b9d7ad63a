//! End-to-end tests of the `epwforge` binary: golden outputs, byte-identical
//! reruns, exit codes and diagnostics.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use epwforge::field::PrimeField;
use epwforge::lagrangian::l0;
use epwforge::store::save_lagrangian;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_epwforge"));
    c.env_remove("EPWFORGE_THREADS");
    c
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares with the stored file; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn numerology_deg42_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["numerology", "--check", "deg42"], dir.path());
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["value"], 42);
    assert_golden("numerology_deg42.json", &stdout(&o));
}

#[test]
fn gen_and_sextic_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["gen", "--field", "f7", "--seed", "42", "--out", "A.json"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let a = std::fs::read_to_string(dir.path().join("A.json")).unwrap();
    assert_golden("gen_f7_seed42.json", &a);
    let o = run(&["sextic", "A.json"], dir.path());
    assert!(o.status.success());
    assert_golden("sextic_f7_seed42.json", &stdout(&o));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(&["gen", "--field", "f3", "--seed", "7", "--planes", "1,2,3;1,4,5", "--out", "P.json"], p).status.success());
    assert!(run(&["gen", "--seed", "5", "--out", "Q.json"], p).status.success());
    let commands: [&[&str]; 7] = [
        &["gen", "--field", "f5", "--seed", "11"],
        &["sextic", "Q.json"],
        &["theta", "P.json"],
        &["stratify", "P.json", "--exhaustive"],
        &["cua", "P.json", "--plane", "1,2,3"],
        &["dual", "Q.json"],
        &["stratify", "Q.json", "--seed", "3", "--samples", "50", "--format", "text"],
    ];
    for args in commands {
        let first = run(args, p);
        assert!(first.status.success(), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        let again = run(args, p);
        assert_eq!(first.stdout, again.stdout, "{args:?}");
        let single = bin().args(args).current_dir(p).env("EPWFORGE_THREADS", "1").output().unwrap();
        assert_eq!(first.stdout, single.stdout, "{args:?} with one thread");
    }
}

#[test]
fn theta_and_cua_on_planted_planes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(&["gen", "--field", "f3", "--seed", "1", "--planes", "1,2,3;1,4,5", "--out", "P.json"], p).status.success());
    let theta: Value = serde_json::from_str(&stdout(&run(&["theta", "P.json"], p))).unwrap();
    assert!(theta["count"].as_u64().unwrap() >= 2);
    let member: Value = serde_json::from_str(&stdout(&run(&["theta", "P.json", "--plane", "1,4,5"], p))).unwrap();
    assert_eq!(member["in_theta"], true);
    let cua: Value = serde_json::from_str(&stdout(&run(&["cua", "P.json", "--plane", "1,2,3"], p))).unwrap();
    // all 13 points of P^2(F_3) have k >= 1
    let points = cua["points"].as_array().unwrap();
    assert_eq!(points.len(), 13);
    assert!(points.iter().all(|x| x["k"].as_u64().unwrap() >= 1));
}

#[test]
fn dual_transport_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(&["gen", "--field", "f11", "--seed", "2", "--out", "A.json"], p).status.success());
    assert!(run(&["dual", "A.json", "--lagrangian-only", "--out", "D.json"], p).status.success());
    assert!(run(&["dual", "D.json", "--lagrangian-only", "--out", "DD.json"], p).status.success());
    let hash = |f: &str| -> Value { serde_json::from_str::<Value>(&std::fs::read_to_string(p.join(f)).unwrap()).unwrap()["content_hash"].clone() };
    assert_eq!(hash("A.json"), hash("DD.json"));
    assert_ne!(hash("A.json"), hash("D.json"));
}

#[test]
fn classify_reports_orbits() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"[{"idx":[1,2,3],"c":"2"}]"#, "Grassmannian", 3),
        (r#"[{"idx":[1,2,3],"c":"1"},{"idx":[1,4,5],"c":"1"}]"#, "PureO2", 1),
        (r#"[{"idx":[1,2,3],"c":"1"},{"idx":[4,5,6],"c":"1"}]"#, "OutsideO2", 0),
    ];
    for (w, label, dim) in cases {
        let o = run(&["classify", "--trivector", w], dir.path());
        assert!(o.status.success());
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["label"], label);
        assert_eq!(v["kernel_dim"], dim);
    }
    let o = run(&["classify", "--trivector", r#"{"field":"Fp","p":5,"terms":[{"idx":[1,2,3],"c":1},{"idx":[1,4,5],"c":1}]}"#], dir.path());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pi1"], serde_json::json!([1, 0, 0, 0, 0, 0]));
    assert_eq!(v["pi2"], serde_json::json!([0, 0, 0, 0, 0, 1]));
}

#[test]
fn degenerate_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = PrimeField::new(7).unwrap();
    save_lagrangian(&l0(&f).unwrap(), &dir.path().join("L0.json")).unwrap();
    let o = run(&["sextic", "L0.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("DegenerateSextic"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn bad_inputs_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(&["gen", "--field", "f7", "--seed", "1", "--out", "A.json"], p).status.success());

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p.join("A.json")).unwrap()).unwrap();
    v["basis"][0][3] = Value::from(5);
    std::fs::write(p.join("bad.json"), v.to_string()).unwrap();
    let o = run(&["sextic", "bad.json"], p);
    assert_eq!(o.status.code(), Some(1));
    std::fs::write(p.join("junk.json"), "{ not json").unwrap();
    let o = run(&["theta", "junk.json"], p);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("junk.json"));

    let usage: [&[&str]; 6] = [
        &["frobnicate"],
        &["gen", "--field", "f8", "--seed", "1"],
        &["gen", "--field", "f7"],
        &["sextic", "A.json", "--chart", "7"],
        &["cua", "A.json", "--plane", "1,2"],
        &["stratify", "A.json"],
    ];
    for args in usage {
        assert_eq!(run(args, p).status.code(), Some(2), "{args:?}");
    }
    let o = bin().args(["numerology", "--check", "deg42"]).env("EPWFORGE_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    // theta enumeration needs a finite field
    assert!(run(&["gen", "--seed", "1", "--out", "Q.json"], p).status.success());
    assert_eq!(run(&["theta", "Q.json"], p).status.code(), Some(1));
}

#[test]
fn help_text_states_the_mathematics() {
    let o = bin().args(["sextic", "--help"]).output().unwrap();
    let help = stdout(&o);
    assert!(help.contains("x_c^4 divides"));
    let o = bin().args(["numerology", "--help"]).output().unwrap();
    assert!(stdout(&o).contains("(6H - E)^4 / 16 = 42"));
}

#[test]
fn verify_subset_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--suite", "1,2,3,11", "--seed", "1"];
    let a = run(&args, dir.path());
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&args, dir.path());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(run(&["verify", "--suite", "13"], dir.path()).status.code(), Some(2));
}
