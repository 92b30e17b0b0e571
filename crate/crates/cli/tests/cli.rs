//! End-to-end checks of the `anntl` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use anntl::functors::eval_f;
use anntl::word::Word;
use anntl::BoundaryObject;
use serde_json::Value;

fn anntl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anntl"))
        .args(args)
        .env("ANNTL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = anntl(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn tangle_file(name: &str, word: &str, at: &str) -> PathBuf {
    let at: BoundaryObject = at.parse().unwrap();
    let m = eval_f(&Word::parse(word, at).unwrap());
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("{name}.json"));
    std::fs::write(&path, m.to_json()).unwrap();
    path
}

#[test]
fn normalize_counts_a_shaded_loop() {
    let v = json(&["normalize", "--at", "0+", "a1 b1"]);
    assert_eq!(v["c_plus"], 1);
    assert_eq!(v["c_minus"], 0);
    assert_eq!(v["w1"], "id");
    let o = anntl(&["normalize", "--at", "0+", "a1 b1"]);
    assert!(stdout(&o).contains("c+ = 1"));
}

#[test]
fn equal_reports_commuting_caps() {
    let o = anntl(&["equal", "--at", "3", "a2 a5", "a3 a2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    let o = anntl(&["equal", "--at", "3", "a2 a5", "a2 a3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn cyclic_table_matches_known_groups() {
    let o = anntl(&[
        "homology", "--module", "tl", "--ring", "Z", "--delta-plus", "0", "--delta-minus", "0",
        "--kind", "hc+", "--max-degree", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let expected = "HC+_1 = Z\nHC+_2 = Z/2\nHC+_3 = Z ⊕ Z/2\nHC+_4 = Z/2 ⊕ Z/6";
    assert_eq!(stdout(&o).trim(), expected);
}

#[test]
fn text_and_json_homology_agree() {
    let args = ["homology", "--ring", "Z", "--kind", "hhred+", "--max-degree", "6"];
    let v = json(&args);
    let text = stdout(&anntl(&args));
    for line in text.lines() {
        let (lhs, rhs) = line.split_once(" = ").unwrap();
        let degree = lhs.rsplit('_').next().unwrap();
        let entry = &v["entries"][degree];
        let rank = entry["rank"].as_u64().unwrap() as usize;
        let torsion: Vec<String> = entry["torsion"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| format!("Z/{t}"))
            .collect();
        let mut parts: Vec<String> = vec!["Z".to_string(); rank];
        parts.extend(torsion);
        let rendered = if parts.is_empty() { "0".to_string() } else { parts.join(" ⊕ ") };
        assert_eq!(rhs, rendered, "degree {degree}");
    }
}

#[test]
fn rational_coefficients_kill_reduced_homology() {
    let v = json(&[
        "homology", "--ring", "Q", "--delta-plus", "3", "--delta-minus", "3", "--kind", "hhred+",
        "--max-degree", "4",
    ]);
    for d in 0..=4 {
        assert_eq!(v["entries"][d.to_string()]["rank"], 0);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "homology", "--kind", "hc-", "--max-degree", "5"];
    assert_eq!(stdout(&anntl(&args)), stdout(&anntl(&args)));
}

#[test]
fn exit_codes_separate_usage_from_domain_errors() {
    assert_eq!(anntl(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(anntl(&["normalize", "--at", "3"]).status.code(), Some(2));
    assert_eq!(anntl(&["--format", "yaml", "equal", "--at", "1", "t", "t"]).status.code(), Some(2));
    let bad = anntl(&["normalize", "--at", "3", "a2 q5"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("byte"));
    assert_eq!(anntl(&["normalize", "--at", "2", "a9"]).status.code(), Some(1));
    assert_eq!(anntl(&["homology", "--kind", "hx+", "--max-degree", "3"]).status.code(), Some(1));
    assert_eq!(
        anntl(&["homology", "--ring", "Z", "--delta-plus", "1/2", "--kind", "hh+", "--max-degree", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(anntl(&["validate", "/nonexistent/tangle.json"]).status.code(), Some(1));
    let v = json(&["equal", "--at", "1", "t", "t"]);
    assert_eq!(v["equal"], true);
}

#[test]
fn tangle_files_round_trip() {
    let a = tangle_file("outer", "a2", "3");
    let b = tangle_file("inner", "b1 t", "2");
    let v = json(&["validate", a.to_str().unwrap()]);
    assert_eq!(v["valid"], true);
    let composed = json(&["compose", a.to_str().unwrap(), b.to_str().unwrap()]);
    let expected: Value =
        serde_json::from_str(&eval_f(&Word::parse("a2 b1 t", "2".parse().unwrap()).unwrap()).to_json()).unwrap();
    assert_eq!(composed, expected);
    let bad = anntl(&["compose", b.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn decompose_reports_standard_form() {
    let f = tangle_file("decomp", "a1 b1 t a3", "2");
    let v = json(&["decompose", f.to_str().unwrap()]);
    assert_eq!(v["c_plus"].as_u64().unwrap() + v["c_minus"].as_u64().unwrap(), 1);
    let n = json(&["normalize", "--at", "2", "a1 b1 t a3"]);
    assert_eq!(v["standard_form"]["w1"], n["w1"]);
    assert_eq!(v["standard_form"]["w2"], n["w2"]);
    assert_eq!(v["standard_form"]["w3"], n["w3"]);
}

#[test]
fn relation_suite_passes() {
    let v = json(&["verify-relations", "--max-n", "3"]);
    assert_eq!(v["failed"], 0);
    assert!(v["total"].as_u64().unwrap() > 100);
}
