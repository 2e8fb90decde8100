use std::path::PathBuf;
use std::process::Command;

use ordcone::cli::{run, EXIT_OK, EXIT_REJECTED};
use ordcone::QVector;
use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name).display().to_string()
}

fn ordcone(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(std::iter::once("ordcone").chain(args.iter().copied()));
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("report is not JSON ({e}): {out}")))
}

fn pyramid(args: &[&str]) -> (i32, Value) {
    let path = corpus("square_pyramid.json");
    let mut full = vec!["--cone", path.as_str()];
    full.extend_from_slice(args);
    ordcone(&full)
}

/// Every string made of digits, signs, slashes and commas must re-parse and print identically.
fn vectors_round_trip(v: &Value) {
    match v {
        Value::String(s) if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || ",-/".contains(c)) => {
            assert_eq!(&QVector::parse(s).expect(s).to_text(), s);
        }
        Value::Array(items) => items.iter().for_each(vectors_round_trip),
        Value::Object(map) => map.values().for_each(vectors_round_trip),
        _ => {}
    }
}

#[test]
fn pyramid_d_disjoint() {
    let (code, r) = pyramid(&["disjoint", "--kind", "d", "1,0,1", "0,1,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["verdict"], "true");
    assert_eq!(r["inputs"]["kind"], "d_disjoint");
    vectors_round_trip(&r);
}

#[test]
fn pyramid_sum_is_not_an_atom() {
    let (code, r) = pyramid(&["atom", "1,1,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["verdict"], "false");
    vectors_round_trip(&r);
}

#[test]
fn orthant_leq() {
    let path = corpus("orthant2.json");
    let (code, r) = ordcone(&["--cone", &path, "leq", "0,0", "1,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["verdict"], "true");
    let (code, r) = ordcone(&["--cone", &path, "leq", "1,2", "0,0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["verdict"], "false");
}

#[test]
fn info_flags_and_citation() {
    for name in ["square_pyramid.json", "orthant2.json", "orthant3.json", "orthant4.json"] {
        let (code, r) = ordcone(&["--cone", &corpus(name), "info"]);
        assert_eq!(code, EXIT_OK, "{name}");
        let flags = &r["certificate"]["flags"];
        for f in ["pointed", "generating", "archimedean", "pre_riesz"] {
            assert_eq!(flags[f], true, "{name}: {f}");
        }
        let cites: Vec<&str> = r["theorem_citations"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        assert!(cites.contains(&"directed Archimedean ⇒ pre-Riesz"));
        vectors_round_trip(&r);
    }
}

#[test]
fn every_subcommand_on_the_pyramid() {
    let cases: &[&[&str]] = &[
        &["disjoint", "--kind", "perp", "1,0,1", "0,1,1"],
        &["disjoint", "--kind", "sym", "1,0,1", "0,1,1"],
        &["mlb", "1,0,1", "0,1,1"],
        &["mlb", "2,1,3", "-1,0,1", "--above", "-5,0,-5"],
        &["d-discrete", "1,1,2"],
        &["discrete", "1,1,2"],
        &["find-atom-below", "1,1,2"],
        &["make-pair", "1,1,2", "-1/2,0,1"],
        &["interval-vertices", "1,1,2"],
    ];
    for args in cases {
        let (code, r) = pyramid(args);
        assert_eq!(code, EXIT_OK, "{args:?}: {r}");
        assert_eq!(r["command"], args[0]);
        vectors_round_trip(&r);
    }
    let (_, r) = pyramid(&["d-discrete", "1,1,2"]);
    assert_eq!(r["verdict"], "not_d_discrete");
    let (_, r) = pyramid(&["find-atom-below", "1,1,2"]);
    assert!(r["trace"].as_array().unwrap().len() <= 3);
    let (_, r) = pyramid(&["interval-vertices", "1,1,2"]);
    assert_eq!(r["verdict"], "4");
}

#[test]
fn inline_cone_document() {
    let doc = r#"{"dim": 2, "inequalities": [["1","0"], ["0","1"]]}"#;
    let (code, r) = ordcone(&["--cone-json", doc, "disjoint", "--kind", "perp", "1,0", "0,3/2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["verdict"], "true");
}

#[test]
fn rejected_inputs() {
    let half_plane = r#"{"dim": 2, "inequalities": [["0","1"]]}"#;
    let ray = r#"{"dim": 2, "generators": [["1","1"]]}"#;
    let cases: Vec<Vec<&str>> = vec![
        vec!["--cone-json", half_plane, "info"],
        vec!["--cone-json", ray, "info"],
        vec!["--cone-json", r#"{"dim": 2, "generators": [["1","x"]]}"#, "info"],
        vec!["--cone-json", r#"{"dim": 2, "strict": []}"#, "info"],
        vec!["--cone", "/nonexistent/cone.json", "info"],
        vec!["info"],
        vec!["bogus-command"],
    ];
    for args in &cases {
        let (code, r) = ordcone(args);
        assert_eq!(code, EXIT_REJECTED, "{args:?}");
        assert_eq!(r["verdict"], "rejected");
        assert!(r["certificate"]["error"].is_string());
    }
    for args in [&["atom", "1,0"][..], &["disjoint", "--kind", "d", "1,0,-1", "0,1,1"], &["leq", "1/0,0,0", "0,0,0"]] {
        let (code, _) = pyramid(args);
        assert_eq!(code, EXIT_REJECTED, "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ordcone");
    let out = Command::new(bin)
        .args(["--cone", &corpus("square_pyramid.json"), "atom", "0,3,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["verdict"], "true");

    let out = Command::new(bin).args(["--cone", &corpus("orthant2.json"), "leq", "1,2,3", "0,0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_REJECTED));
}
