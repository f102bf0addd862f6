use std::process::{Command, Output};

use serde_json::Value;

fn wonderland(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wonderland"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lie_build_and_splitting() {
    let out = wonderland(&["lie", "build", "--type", "sl", "--n", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["names"], serde_json::json!(["E12", "H1", "E21"]));
    let out = wonderland(&["lie", "splitting", "--standard"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["l1"]["is_lagrangian"], true);
    assert_eq!(v["l2"]["is_lagrangian"], true);
    let l2 = serde_json::json!({ "l2_basis": v["l2_basis"] }).to_string();
    assert!(wonderland(&["lie", "splitting", "--l2", &l2]).status.success());
    let bad = serde_json::json!({ "l2_basis": [
        ["1/1", "0/1", "0/1", "0/1", "0/1", "0/1"],
        ["0/1", "1/1", "0/1", "0/1", "0/1", "0/1"],
        ["0/1", "0/1", "1/1", "0/1", "0/1", "0/1"]
    ]})
    .to_string();
    assert_eq!(wonderland(&["lie", "splitting", "--l2", &bad]).status.code(), Some(2));
}

#[test]
fn orbit_dimensions_and_boundary() {
    let dim = |p: &str| json(&wonderland(&["geom", "orbit-dim", "--model", "pgl2", "--point", p]))["orbit_dimension"].clone();
    assert_eq!(dim("[[2,1],[1,1]]"), 3);
    assert_eq!(dim("[[1,0],[0,0]]"), 2);
    let v = json(&wonderland(&["geom", "boundary", "--sweep", r#"[[[1,2],[2,4]],[["1/2",0],[0,1]]]"#]));
    assert_eq!(v[0]["boundary"], true);
    assert_eq!(v[0]["segre"]["u"], serde_json::json!(["1/1", "2/1"]));
    assert_eq!(v[1]["boundary"], false);
    assert_eq!(wonderland(&["geom", "orbit-dim", "--point", "[[0,0],[0,0]]"]).status.code(), Some(2));
}

#[test]
fn poisson_checks_and_exit_codes() {
    let out = wonderland(&["poisson", "jacobi", "--model", "pgl2", "--samples", "8", "--seed", "42"]);
    assert!(out.status.success());
    assert_eq!(json(&out).as_array().unwrap().len(), 8);
    assert!(wonderland(&["poisson", "action", "--n", "2", "--seed", "7", "--samples", "2"]).status.success());
    assert!(wonderland(&["poisson", "tangency", "--divisor", "det0"]).status.success());
    // the negative control fails, so the exit status is 1
    assert_eq!(wonderland(&["poisson", "tangency", "--divisor", "hyperplane"]).status.code(), Some(1));
}

#[test]
fn invariants_and_expressions() {
    let v = json(&wonderland(&["invariants", "--action", "conj-m2", "--degree", "2"]));
    assert_eq!(v["dim"], 2);
    let v = json(&wonderland(&["invariants", "--action", "line-c2x4", "--degree", "1,1,1,1"]));
    assert_eq!(v["dim"], 2);
    let out = wonderland(&["invariants", "express", "--target", "traba", "--gens", "standard", "--bound", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["expression"], "trAB^2 - 2");
    let out = wonderland(&["invariants", "express", "--target", "tra3", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["expression"], Value::Null);
    assert_eq!(wonderland(&["invariants", "--action", "torus"]).status.code(), Some(2));
}

#[test]
fn git_commands() {
    let v = json(&wonderland(&["git", "ring", "--model", "pgl2", "--r", "2", "--degree", "2"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["dims"], serde_json::json!([1, 2, 6]));
    assert!(wonderland(&["git", "glue", "--charts", "tr,det", "--samples", "4"]).status.success());
    assert!(wonderland(&["git", "saturation", "--seed", "3"]).status.success());
    assert_eq!(wonderland(&["git", "glue", "--charts", "tr,trAB"]).status.code(), Some(2));
}

#[test]
fn charvar_commands() {
    let v = json(&wonderland(&["charvar", "trace", "--A", "[[1,1],[0,1]]", "--B", "[[1,0],[1,1]]"]));
    assert_eq!(v["coordinates"], serde_json::json!(["2/1", "2/1", "3/1"]));
    assert_eq!(wonderland(&["charvar", "trace", "--A", "[[2,0],[0,2]]", "--B", "[[1,0],[0,1]]"]).status.code(), Some(2));
    let v = json(&wonderland(&["charvar", "stratify", "--tuple", "[[[1,0],[0,0]],[[1,0],[0,1]]]"]));
    assert_eq!(v["signature"], serde_json::json!([1]));
    assert!(wonderland(&["charvar", "rank1"]).status.success());
}

#[test]
fn run_writes_deterministic_reports() {
    let dir = std::env::temp_dir().join(format!("wonderland-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    for name in ["a.json", "b.json"] {
        let out = wonderland(&["run", "--experiment", "jacobi", "--model", "pgl2", "--samples", "10", "--seed", "42", "--out", &path(name)]);
        assert!(out.status.success());
    }
    let a = std::fs::read(path("a.json")).unwrap();
    assert_eq!(a, std::fs::read(path("b.json")).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["summary"]["pass"], 10);
    assert!(dir.join("a.json.timing.json").exists());
    std::fs::remove_dir_all(&dir).unwrap();

    let one = Command::new(env!("CARGO_BIN_EXE_wonderland"))
        .args(["run", "--experiment", "action", "--samples", "3"])
        .env("WONDERLAND_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(one.stdout, wonderland(&["run", "--experiment", "action", "--samples", "3"]).stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(wonderland(&["run", "--experiment", "noop"]).status.code(), Some(2));
    assert_eq!(wonderland(&["run", "--experiment", "jacobi", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(wonderland(&["run", "--experiment", "jacobi", "--model", "torus"]).status.code(), Some(2));
    assert_eq!(wonderland(&["frobnicate"]).status.code(), Some(2));
}
