mod common;

use cohh::bundled::{bundled, NAMES};
use cohh::document::Document;
use cohh::linalg::Field;
use common::{run_cli, Run};
use serde_json::{json, Value};

fn report(run: &Run) -> Value {
    serde_json::from_slice(&run.stdout).expect("stdout is a JSON report")
}

#[test]
fn cohh0_of_comatrix_coalgebra_is_the_identity_line() {
    let run = run_cli(&["cohh0", "data/m2c.json", "M2c"]);
    assert_eq!(run.code, 0);
    assert_eq!(report(&run)["result"], json!({ "dim": 1, "basis": ["E11 + E22"] }));
}

#[test]
fn check_reports_group_like_coalgebra_cocommutative() {
    let run = run_cli(&["check", "data/g2.json"]);
    assert_eq!(run.code, 0);
    let r = report(&run);
    assert_eq!(r["result"]["coalgebras"]["G2"]["cocommutative"], json!(true));
    assert_eq!(r["pass"], json!(true));
}

#[test]
fn cyclic_and_envelope_tables_agree() {
    for c in ["S2", "S3"] {
        let cyclic = report(&run_cli(&["cohh", "data/spheres.json", c, "--max-degree", "6"]));
        let envelope = report(&run_cli(&["cohh-envelope", "data/spheres.json", c, "--max-degree", "6"]));
        assert_eq!(cyclic["result"]["dims"], envelope["result"]["dims"], "{c}");
        assert_eq!(envelope["verdicts"]["matches_cyclic_complex"], json!(true));
    }
}

#[test]
fn shipped_data_matches_example_command() {
    for name in NAMES {
        let run = run_cli(&["example", name]);
        assert_eq!(run.code, 0, "{name}");
        let shipped = std::fs::read(common::manifest_dir().join("data").join(format!("{name}.json"))).unwrap();
        assert_eq!(run.stdout, shipped, "{name}");
    }
}

#[test]
fn shipped_data_round_trips() {
    for name in NAMES {
        let text = std::fs::read_to_string(common::manifest_dir().join("data").join(format!("{name}.json"))).unwrap();
        let doc = Document::parse(&text, None).unwrap();
        assert_eq!(doc.to_json(), text, "{name}");
        assert_eq!(doc, bundled(name, Field::Rationals).unwrap());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run_cli(&["cotrace", "data/m2c.json", "M2c", "E11_element"]).code, 3);
    assert_eq!(run_cli(&["cohh", "data/g2.json", "G2", "--max-degree", "2"]).code, 2);
    assert_eq!(run_cli(&["cohh", "data/spheres.json", "S2", "--max-degree", "-1"]).code, 2);
    assert_eq!(run_cli(&["check", "tests/fixtures/truncated.json"]).code, 2);
    assert_eq!(run_cli(&["cohh0", "data/g2.json", "G3"]).code, 4);
    assert_eq!(run_cli(&["check", "data/missing.json"]).code, 4);
    assert_eq!(run_cli(&["frobnicate"]).code, 4);
    assert_eq!(run_cli(&["check", "data/g2.json", "--field", "fp:4"]).code, 4);
}

#[test]
fn parse_errors_carry_a_position() {
    let run = run_cli(&["check", "tests/fixtures/truncated.json"]);
    let r = report(&run);
    assert_eq!(r["error"]["kind"], json!("parse"));
    assert!(r["error"]["message"].as_str().unwrap().contains("line 8"));
}

#[test]
fn field_override_changes_the_report_field() {
    let r = report(&run_cli(&["check", "data/sw.json", "--field", "fp:5"]));
    assert_eq!(r["field"], json!("fp:5"));
    assert_eq!(r["verdicts"]["additive:extension"], json!(true));
}

#[test]
fn human_summary_goes_to_stderr() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_cohh"))
        .args(["cotor", "data/spheres.json", "k", "S3", "k", "--max-degree", "4"])
        .current_dir(common::manifest_dir())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!out.stderr.is_empty());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["dims"], json!([1, 0, 1, 0, 1]));
}
