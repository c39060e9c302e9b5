use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ybhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybhom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

fn identity_file(dir: &Path) -> String {
    let path = dir.join("identity.json");
    fs::write(&path, r#"{"m": 2, "R1": [[0, 0], [1, 1]], "R2": [[0, 1], [0, 1]]}"#).unwrap();
    path.display().to_string()
}

#[test]
fn axioms_of_cyclic_biquandle() {
    let o = ybhom(&["axioms", "cyclic:4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 7);
    assert!(lines[..6].iter().all(|l| l["pass"] == true));
    assert_eq!(lines[6]["biquandle"], true);
}

#[test]
fn axioms_of_identity_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = ybhom(&["axioms", &identity_file(dir.path()), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let lines = json_lines(&o);
    let by_check = |name: &str| lines.iter().find(|l| l["check"] == name).unwrap()["pass"].clone();
    assert_eq!(by_check("yang-baxter"), true);
    assert_eq!(by_check("diagonal"), false);
    assert_eq!(by_check("property-i"), false);
}

#[test]
fn bad_alexander_parameters_are_input_errors() {
    let o = ybhom(&["axioms", "alexander:4:2:3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a unit"));
    assert!(o.stdout.is_empty());
}

#[test]
fn homology_rows_of_the_reference_table() {
    let o = ybhom(&["homology", "cyclic:2", "--n", "1..5", "--variant", "NYB"]);
    assert_eq!(o.status.code(), Some(0));
    let groups: Vec<String> = stdout(&o).lines().map(|l| l.split(" = ").nth(1).unwrap().to_string()).collect();
    assert_eq!(groups, ["Z ⊕ Z_2", "Z", "Z ⊕ Z_2", "Z", "Z ⊕ Z_2"]);

    let o = ybhom(&["homology", "cyclic:5", "--n", "3", "--variant", "D", "--format", "json"]);
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["free_rank"], 9);
    assert_eq!(lines[0]["torsion"], serde_json::json!([]));

    let o = ybhom(&["homology", "cyclic:1", "--n", "1..4", "--variant", "yb"]);
    assert!(stdout(&o).lines().all(|l| l.ends_with("= Z")));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn homology_output_is_canonically_ordered() {
    let o = ybhom(&["homology", "cyclic:3", "--n", "1..4", "--threads", "3", "--format", "json"]);
    let keys: Vec<(u64, String)> =
        json_lines(&o).iter().map(|l| (l["n"].as_u64().unwrap(), l["variant"].as_str().unwrap().to_string())).collect();
    let variants = ["YB", "D", "NYB"];
    let expected: Vec<(u64, String)> = (1..=4).flat_map(|n| variants.iter().map(move |v| (n, v.to_string()))).collect();
    assert_eq!(keys, expected);
}

#[test]
fn csv_flattens_torsion() {
    let o = ybhom(&["homology", "cyclic:3", "--n", "3", "--variant", "yb", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "spec,kind,m,n,variant,coeff,group,elapsed_ms");
    assert!(lines.next().unwrap().starts_with("cyclic:3,homology,3,3,YB,Z,rank=9;torsion=3,"));
}

#[test]
fn cohomology_and_field_coefficients() {
    let o = ybhom(&["homology", "cyclic:2", "--n", "2", "--variant", "yb", "--cohomology"]);
    assert_eq!(stdout(&o).trim(), "H^2_YB(cyclic:2; Z) = Z^2 ⊕ Z_2");
    let o = ybhom(&["homology", "cyclic:2", "--n", "1", "--variant", "yb", "--coeff", "zp:2"]);
    assert_eq!(stdout(&o).trim(), "H_1^YB(cyclic:2; Z_2) = Z_2^2");
    let o = ybhom(&["homology", "cyclic:2", "--coeff", "zp:4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normalized_variants_need_the_diagonal_condition() {
    let dir = tempfile::tempdir().unwrap();
    let id = identity_file(dir.path());
    assert_eq!(ybhom(&["homology", &id, "--n", "2", "--variant", "yb"]).status.code(), Some(0));
    let o = ybhom(&["homology", &id, "--n", "2", "--variant", "d"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn homology_budget_is_checked_before_computing() {
    let o = ybhom(&["homology", "cyclic:5", "--n", "1..9", "--budget-entries", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn table_subset_matches() {
    let o = ybhom(&["table", "--subset", "C_3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().lines().last().unwrap().starts_with("15/15 match"));
}

#[test]
fn table_detects_a_broken_face_map() {
    let o = ybhom(&["table", "--subset", "C_2", "--inject-fault", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let lines = json_lines(&o);
    let summary = lines.last().unwrap();
    assert!(!summary["diff"].as_array().unwrap().is_empty());
    assert!(summary["matched"].as_u64().unwrap() < 15);
}

#[test]
fn environment_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_ybhom"))
        .args(["table", "--subset", "C_2"])
        .env("YBHOM_FORMAT", "json")
        .env("YBHOM_INJECT_FAULT", "true")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(json_lines(&o).len() > 1);
}

#[test]
fn verify_commands() {
    let o = ybhom(&["verify", "torsion", "cyclic:3", "--n", "1..5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|l| l["pass"] == true && l["bound"] == 3));

    let o = ybhom(&["verify", "conjecture", "cyclic:4", "--n", "1..5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_lines(&o).iter().all(|l| l["matches"] == true));

    let o = ybhom(&["verify", "betti", "cyclic:5", "--n", "1..5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let yb: Vec<u64> = json_lines(&o).iter().map(|l| l["computed"][0].as_u64().unwrap()).collect();
    assert_eq!(yb, [1, 5, 25, 125, 625]);

    let o = ybhom(&["verify", "splitting", "cyclic:2", "--n", "1..4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);

    let o = ybhom(&["verify", "betti", "alexander:4:3:3", "--n", "1..2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_equivariance_and_property_i() {
    let o = ybhom(&["verify", "equivariance", "alexander:4:3:3", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["pass"], true);

    let dir = tempfile::tempdir().unwrap();
    let id = identity_file(dir.path());
    assert_eq!(ybhom(&["verify", "equivariance", &id, "--n", "2"]).status.code(), Some(2));
    assert_eq!(ybhom(&["verify", "property-i", &id]).status.code(), Some(1));
    assert_eq!(ybhom(&["verify", "property-i", "cyclic:4"]).status.code(), Some(0));
}

#[test]
fn export_writes_sms() {
    let dir = tempfile::tempdir().unwrap();
    let o = ybhom(&["export", "cyclic:2", "--n", "2", "--variant", "yb", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("cyclic-2_yb_d2.sms")).unwrap();
    let m = ybhom::intlinalg::read_sms(text.as_bytes()).unwrap();
    assert_eq!((m.rows(), m.cols()), (2, 4));
    let dense: Vec<Vec<i64>> = (0..2).map(|r| (0..4).map(|c| i64::try_from(m.get(r, c)).unwrap()).collect()).collect();
    assert_eq!(dense, [[2, 0, 0, -2], [-2, 0, 0, 2]]);
}

#[test]
fn export_over_budget_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out");
    let o = ybhom(&["export", "cyclic:5", "--n", "9", "--export", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert!(!target.exists());
}

#[test]
fn cocycle_dump() {
    let o = ybhom(&["cocycles", "--m", "3", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 3);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["index"], i);
        assert_eq!(l["representative"][1], 0);
        assert_eq!(l["cochain"]["values"].as_object().unwrap().len(), 3);
    }

    let dir = tempfile::tempdir().unwrap();
    let o = ybhom(&["cocycles", "--m", "3", "--n", "2", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
    let first = fs::read_to_string(dir.path().join("cocycle_m3_n2_0000.json")).unwrap();
    let v: Value = serde_json::from_str(&first).unwrap();
    let cochain: ybhom::homology::Cochain = serde_json::from_value(v["cochain"].clone()).unwrap();
    assert!(cochain.is_orbit_constant());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ybhom(&["homology", "cyclic:2", "--n", "0..2"]).status.code(), Some(2));
    assert_eq!(ybhom(&["homology", "cyclic:2", "--variant", "xyz"]).status.code(), Some(2));
    assert_eq!(ybhom(&["table", "--subset", "C_9"]).status.code(), Some(2));
    assert_eq!(ybhom(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ybhom(&["--help"]).status.code(), Some(0));
}
