use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcoh")).args(args).env_remove("QCOH_MODEL_PATH").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn models_list_and_show() {
    let out = qcoh(&["models", "list"]);
    assert_eq!(code(&out), 0);
    let names: Vec<String> = serde_json::from_value(json(&out)).unwrap();
    assert_eq!(names, ["cp1", "cp2", "cp3", "cp4", "cp5", "f3", "sigma1", "gr24"]);
    let out = qcoh(&["models", "show", "f3"]);
    let v = json(&out);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
    assert_eq!(v["rank"], 2);
}

#[test]
fn models_validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.model");
    std::fs::write(&good, qcoh(&["models", "show", "sigma1"]).stdout).unwrap();
    assert_eq!(code(&qcoh(&["models", "validate", good.to_str().unwrap()])), 0);

    let mut v = json(&qcoh(&["models", "show", "sigma1"]));
    v["pairing"][1][2] = Value::from(0);
    let broken = dir.path().join("broken.model");
    std::fs::write(&broken, v.to_string()).unwrap();
    let out = qcoh(&["models", "validate", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["reports"][0]["witnesses"][0]["error"].as_str().unwrap().contains("pairing"));

    let junk = dir.path().join("junk.model");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&qcoh(&["models", "validate", junk.to_str().unwrap()])), 2);
    assert_eq!(code(&qcoh(&["models", "validate", "/no/such/file"])), 2);
}

#[test]
fn check_commands() {
    let out = qcoh(&["check", "--model", "f3", "--flatness", "--assoc"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["passed"], true);
    for (model, file, n) in [("gr24", "gr24.rel", 1), ("sigma1", "sigma1.rel", 2)] {
        let out = qcoh(&["check", "--model", model, "--relations", file]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["reports"].as_array().unwrap().len(), n);
    }
}

#[test]
fn failing_relation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let rel = dir.path().join("bad.rel");
    std::fs::write(&rel, "a^5 - 3*q*a\n").unwrap();
    let out = qcoh(&["check", "--model", "gr24", "--relations", rel.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["reports"][0]["status"], "fail");
}

#[test]
fn jfun_verify_and_diff() {
    for (model, ops) in [("cp1", "cpm.ops"), ("sigma1", "sigma1.ops")] {
        let out = qcoh(&["jfun", "--model", model, "--closed-form", "--verify", ops]);
        assert_eq!(code(&out), 0, "{model}");
    }
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("f3.json");
    let out = qcoh(&["jfun", "--model", "f3", "--solve", "--n", "6", "--out", dump.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(dump.exists());
    let out = qcoh(&["jfun", "--model", "f3", "--closed-form", "--n", "6", "--against", dump.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = qcoh(&["jfun", "--model", "sigma1", "--diff"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn jfun_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("cp1.json");
    qcoh(&["jfun", "--model", "cp1", "--solve", "--n", "3", "--out", dump.to_str().unwrap()]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    v["series"][1]["coeff"][0][0]["c"] = Value::from("5");
    std::fs::write(&dump, v.to_string()).unwrap();
    let out = qcoh(&["jfun", "--model", "cp1", "--closed-form", "--n", "3", "--against", dump.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn jfun_rows_give_gauge_factor() {
    let out = qcoh(&["jfun", "--model", "f3", "--closed-form", "--n", "3", "--rows", "f3.rows"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["Q"][0][3], "-1*q1");
    assert_eq!(v["Q"][1][5], "1*q1");
}

#[test]
fn jfun_usage_errors() {
    assert_eq!(code(&qcoh(&["jfun", "--model", "cp1"])), 2);
    assert_eq!(code(&qcoh(&["jfun", "--model", "cp1", "--closed-form", "--solve"])), 2);
    assert_eq!(code(&qcoh(&["jfun", "--model", "gr24", "--closed-form"])), 2);
    assert_eq!(code(&qcoh(&["jfun", "--model", "nowhere", "--solve"])), 2);
    assert_eq!(code(&qcoh(&["check", "--model", "cp1", "--n", "0"])), 2);
}

#[test]
fn gw_table() {
    let out = qcoh(&["gw", "--model", "cp1", "--max-degree", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["N"], 3);
    let find = |n: u64, label: &str| {
        v["invariants"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["D"][0] == 3 && r["n"] == n && r["j_label"] == label)
            .unwrap()
            .clone()
    };
    assert_eq!(find(5, "x")["value"], "1/36");
    assert_eq!(find(6, "1")["value"], "-11/108");
    let forced = find(4, "x");
    assert_eq!(forced["value"], "0");
    assert_eq!(forced["note"], "forced by degree axiom");
}

#[test]
fn classical_and_tilde() {
    for model in ["f3", "sigma1"] {
        let out = qcoh(&["classical", "--model", model]);
        assert_eq!(code(&out), 0, "{model}");
    }
    let out = qcoh(&["tilde", "--model", "f3", "--t-order", "6"]);
    assert_eq!(code(&out), 0);
    let out = qcoh(&["tilde", "--model", "cp1", "--t-order", "2"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(code(&qcoh(&["tilde", "--model", "cp1", "--t-order", "1"])), 2);
}

#[test]
fn output_is_deterministic() {
    let a = qcoh(&["gw", "--model", "cp2", "--max-degree", "2"]).stdout;
    let b = qcoh(&["gw", "--model", "cp2", "--max-degree", "2"]).stdout;
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let i = text.find("\"invariants\"").unwrap();
    let j = text.find("\"max_degree\"").unwrap();
    assert!(i < j, "keys are sorted");
}

#[test]
fn model_path_environment() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = json(&qcoh(&["models", "show", "cp2"]));
    v["name"] = Value::from("plane");
    std::fs::write(dir.path().join("plane.model"), v.to_string()).unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_qcoh")).args(args).env("QCOH_MODEL_PATH", dir.path()).output().unwrap()
    };
    let out = run(&["check", "--model", "plane", "--flatness"]);
    assert_eq!(code(&out), 0);
    let names: Vec<String> = serde_json::from_value(json(&run(&["models", "list"]))).unwrap();
    assert!(names.contains(&"plane".to_string()));
    assert!(Path::new(env!("CARGO_BIN_EXE_qcoh")).exists());
}
