use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn exe(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exceptional"))
        .args(args)
        .arg("--quiet")
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn weyl_e7_pairs() {
    let d = tmp();
    let out = exe(d.path(), &["weyl", "--type", "E7", "--node", "7", "--pairs"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["orbit_size"], 56);
    assert_eq!(v["double_cosets"], 4);
    assert_eq!(v["partition"], serde_json::json!([27, 27, 1, 1]));
    assert_eq!(v["numbering"], "Bourbaki");
    let out = exe(d.path(), &["weyl", "--type", "E6", "--node", "1"]);
    assert_eq!(json(&out)["orbit_size"], 27);
    assert!(json(&out).get("double_cosets").is_none());
}

#[test]
fn usage_errors_exit_2() {
    let d = tmp();
    for args in [
        vec!["weyl", "--type", "E7", "--node", "8"],
        vec!["weyl", "--type", "G2", "--node", "1"],
        vec!["verify", "--suite", "nope"],
        vec!["calibrate", "--target", "nope"],
        vec!["dump", "octonion-table", "xml"],
        vec!["dump", "lie-basis:unknown", "json"],
        vec!["demos", "--torus", "p=4"],
        vec!["demos"],
        vec!["frobnicate"],
    ] {
        assert_eq!(exe(d.path(), &args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn brown_without_calibration_exits_3() {
    let d = tmp();
    let out = exe(d.path(), &["verify", "--suite", "brown"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("calibrate --target brown-fts"));
    assert_eq!(exe(d.path(), &["dump", "brown-t-tensor", "csv"]).status.code(), Some(3));
    assert_eq!(exe(d.path(), &["verify", "--suite", "all"]).status.code(), Some(3));
    // a file without the Brown section is not enough either
    assert_eq!(exe(d.path(), &["calibrate", "--target", "octonion-signs"]).status.code(), Some(0));
    assert_eq!(exe(d.path(), &["verify", "--suite", "brown"]).status.code(), Some(3));
}

#[test]
fn tampered_calibration_exits_3() {
    let d = tmp();
    assert_eq!(exe(d.path(), &["calibrate", "--target", "octonion-signs"]).status.code(), Some(0));
    let path = d.path().join("calibration.json");
    let text = std::fs::read_to_string(&path).unwrap().replace("\"wedge_in_v\": -1", "\"wedge_in_v\": 1");
    std::fs::write(&path, text).unwrap();
    assert_eq!(exe(d.path(), &["verify", "--suite", "weyl"]).status.code(), Some(3));
}

#[test]
fn calibration_is_idempotent_and_merges() {
    let d = tmp();
    let path = d.path().join("calibration.json");
    assert_eq!(exe(d.path(), &["calibrate", "--target", "octonion-signs"]).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(exe(d.path(), &["calibrate", "--target", "octonion-signs"]).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first);
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["octonion_signs"], serde_json::json!({"wedge_in_v": -1, "wedge_in_w": 1}));
    assert_eq!(v["hash"].as_str().unwrap().len(), 64);

    assert_eq!(exe(d.path(), &["calibrate", "--target", "moufang-slots"]).status.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["octonion_signs"]["wedge_in_v"], -1);
    assert_eq!(v["moufang_slots"]["slots"], serde_json::json!(["Sandwich", "Left", "Right"]));
    assert_eq!(v["moufang_slots"]["conjugate_u"], serde_json::json!([true, false, false]));
}

#[test]
fn albert_reports_are_byte_identical() {
    let d = tmp();
    let run = |name: &str| {
        let out = exe(d.path(), &["verify", "--suite", "albert", "--seed", "42", "--json", name]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(d.path().join(name)).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["suite"], "albert");
    assert_eq!(v["seed"], 42);
    assert!(v["calibration_hash"].is_null());
}

#[test]
fn weyl_report_schema() {
    let d = tmp();
    let out = exe(d.path(), &["verify", "--suite", "weyl"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    let e7 = checks.iter().find(|c| c["name"] == "E7/P7 pair orbits = 4").unwrap();
    assert_eq!(e7["status"], "pass");
    assert_eq!(e7["computed"], "4");
    assert!(e7["claim"].as_str().unwrap().contains("four orbits"));
    assert!(e7["elapsed_ms"].is_null());
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.lines().any(|l| l.starts_with("PASS  E7/P7 pair orbits = 4")));

    let out = exe(d.path(), &["verify", "--suite", "weyl", "--timings"]);
    assert!(json(&out)["checks"][0]["elapsed_ms"].is_u64());
}

#[test]
fn similitudes_suite_fails_only_the_stated_moufang_multiplier() {
    let d = tmp();
    let out = exe(d.path(), &["verify", "--suite", "similitudes"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["Moufang similitude, multipliers equal to the scalars"]);
}

#[test]
fn octonion_table_dump_is_stable() {
    let d = tmp();
    let a = exe(d.path(), &["dump", "octonion-table", "json"]);
    let b = exe(d.path(), &["dump", "octonion-table", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["hash"].as_str().unwrap().len(), 64);
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e[0].as_u64().unwrap() < 8 && e[3].as_str().unwrap().contains('/')));

    let csv = exe(d.path(), &["dump", "octonion-table", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("i,j,k,value"));
    assert_eq!(text.lines().count(), entries.len() + 1);

    let out = d.path().join("table.csv");
    let status = exe(d.path(), &["dump", "octonion-table", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out).unwrap(), text);
}

#[test]
fn derivation_basis_dump() {
    let d = tmp();
    let out = exe(d.path(), &["dump", "lie-basis:der-j", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["name"], "der-j");
    assert_eq!(v["dimension"], 52);
    assert_eq!(v["basis"].as_array().unwrap().len(), 52);
    assert_eq!(v["certification"], "ExactlyVerified");
}

#[test]
fn albert_tensor_dump() {
    let d = tmp();
    let out = exe(d.path(), &["dump", "albert-tensor", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("kind,a,b,c,value"));
    assert!(text.lines().any(|l| l.starts_with("jordan,")));
    assert!(text.lines().any(|l| l.starts_with("norm,")));
}

#[test]
fn demos() {
    let d = tmp();
    let out = exe(d.path(), &["demos", "--torus", "p=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["torus"]["count"], 3);
    assert_eq!(v["torus"]["diagonal"], serde_json::json!(["1/1", "2/1", "4/1"]));

    let out = exe(d.path(), &["demos", "--torus", "p=5", "diag=1,2,3,4,5", "--quadric", "random=5", "seed=7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["torus"]["count"], 5);
    assert_eq!(v["quadric"]["all_pass"], true);
    assert_eq!(v["quadric"]["forms"].as_array().unwrap().len(), 5);
    assert_eq!(v["quadric"]["seed"], 7);

    assert_eq!(exe(d.path(), &["demos", "--torus", "p=3", "diag=1,1,2"]).status.code(), Some(2));
}
