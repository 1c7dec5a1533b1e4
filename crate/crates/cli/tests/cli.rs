use std::fs;
use std::process::Command;

use serde_json::Value;

fn mcgf(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_mcgf")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let body = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, body)
}

const TRIVIAL_TORUS: &str = r#"{"surface":{"genus":1,"punctures":1,"boundary":0},"images":[[["1"]],[["1"]]]}"#;

#[test]
fn orbit_of_trivial_rep() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    fs::write(&rep, TRIVIAL_TORUS).unwrap();
    let (code, v) = mcgf(&["orbit", "--rep", rep.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "finite");
    assert_eq!(v["result"]["size"], 1);
}

#[test]
fn report_header_echoes_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (code, _) = mcgf(&["--seed", "17", "--cutoff", "50", "orbit", "--instance", "s3-torus", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["tool"], "mcgf");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["seed"], 17);
    assert_eq!(v["config"]["global"]["cutoff"], 50);
    assert_eq!(v["result"]["size"], 3);
}

#[test]
fn rank1_orbit_half() {
    let (code, v) = mcgf(&["rank1", "orbit", "--point", "1/2,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["size"], 3);
}

#[test]
fn diag_two_not_quasi_unipotent() {
    let (code, v) = mcgf(&["check", "quasiunipotent", "--matrix", r#"[["2"]]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], false);
}

#[test]
fn cutoff_is_status_zero() {
    let (code, v) = mcgf(&["--cutoff", "2", "orbit", "--instance", "s4-torus"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "cutoff_exceeded");
    assert!(v["result"]["size"].is_null());
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(mcgf(&["nonsense"]).0, 2);
    assert_eq!(mcgf(&["orbit", "--rep-json", "{not json"]).0, 2);
    let (code, v) = mcgf(&["orbit", "--rep", "/nonexistent/rep.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["ok"], false);
}

#[test]
fn precondition_violations_exit_three() {
    let bad = r#"{"surface":{"genus":1,"punctures":0,"boundary":0},"images":[[["0","1"],["1","0"]],[["1","1"],["0","1"]]]}"#;
    assert_eq!(mcgf(&["orbit", "--rep-json", bad]).0, 3);
    assert_eq!(mcgf(&["twist", "apply", "--surface", "1,1,0", "--curve", "c7"]).0, 3);
}

#[test]
fn orbit_witnesses_replay() {
    use mcg_finite::mcg::{mcg_generators, parse_witness, replay};
    use mcg_finite::rep::fingerprint;
    let (_, v) = mcgf(&["orbit", "--instance", "s3-torus"]);
    let rho = mcg_finite::instances::s3_torus();
    let gens = mcg_generators(rho.sig()).unwrap();
    for e in v["result"]["elements"].as_array().unwrap() {
        let steps = parse_witness(&gens, e["witness"].as_str().unwrap()).unwrap();
        let moved = replay(&rho, &gens, &steps).unwrap();
        assert_eq!(fingerprint(&moved, 2), e["fingerprint"].as_str().unwrap());
    }
}

#[test]
fn worker_count_does_not_change_report() {
    let (_, one) = mcgf(&["--workers", "1", "orbit", "--instance", "s4-torus"]);
    let (_, four) = mcgf(&["--workers", "4", "orbit", "--instance", "s4-torus"]);
    assert_eq!(one["result"], four["result"]);
}

#[test]
fn cover_round_trip() {
    let (code, v) = mcgf(&["cover", "enumerate", "--surface", "1,1,0", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["counts"], serde_json::json!([1, 3, 7]));
    let dir = tempfile::tempdir().unwrap();
    let cover = dir.path().join("cover.json");
    fs::write(&cover, v["result"]["covers"][5].to_string()).unwrap();
    let (code, p) = mcgf(&["cover", "pullback", "--cover", cover.to_str().unwrap(), "--instance", "s3-torus"]);
    assert_eq!(code, 0);
    let order = p["result"]["pullback_image_order"].as_u64().unwrap();
    assert_eq!(6 % order, 0);
}

#[test]
fn swapped_characters_cut_subspace() {
    let (code, v) = mcgf(&["cut", "--curves", "a1", "--instance", "swapped-characters"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["reducibility"]["case"], "subspace");
    assert_eq!(v["result"]["cut_surface"]["boundary"], 2);
}

#[test]
fn augmentation_example_fixed() {
    let (code, v) = mcgf(&["examples", "augmentation", "--rank", "2", "--trunc", "3", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "fixed");
    assert_eq!(v["result"]["trivial"], false);
    let (_, v2) = mcgf(&["examples", "augmentation", "--trunc", "2", "--verify"]);
    assert!(v2["result"]["report"]["discrepancy"].is_string());
}

#[test]
fn lemma_suites_hold() {
    for lemma in ["dehn-conjugate", "exact-seq", "subquot", "gln-finite"] {
        let (code, v) = mcgf(&["verify", "lemma", lemma]);
        assert_eq!(code, 0, "{lemma}");
        assert_eq!(v["result"]["holds"], true, "{lemma}");
    }
}

#[test]
fn sigma_commands() {
    let (code, v) = mcgf(&["sigma", "twist-transform", "--curve", "a1", "--power", "-3", "--instance", "block-unipotent"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["holds"], true);
    let (code, v) = mcgf(&["sigma", "extract", "--instance", "block-unipotent"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["values"]["a1"], serde_json::json!([["2"]]));
    assert_eq!(mcgf(&["sigma", "extract", "--instance", "s3-torus"]).0, 3);
}

#[test]
fn finite_image_and_irreducible() {
    let (_, v) = mcgf(&["check", "finite-image", "--instance", "s4-torus"]);
    assert_eq!(v["result"]["order"], 24);
    let (_, v) = mcgf(&["check", "irreducible", "--instance", "swapped-characters"]);
    assert_eq!(v["result"]["verdict"], "reducible");
    let (_, v) = mcgf(&["rank1", "criterion", "--instance", "rank1-z4-z6"]);
    assert_eq!(v["result"]["verdict"], "finite_image");
}
