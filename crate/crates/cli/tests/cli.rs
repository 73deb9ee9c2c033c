use std::fs;
use std::path::Path;
use std::process::Command;

use bfly::run_with;
use bfly::workspace::{Manifest, Workspace, MANIFEST};
use bfly_core::group::DEFAULT_ORDER_CAP;
use serde_json::Value;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn bfly(dir: &Path, args: &[&str]) -> Run {
    let mut full = vec!["bfly".to_string(), "--workspace".to_string(), dir.display().to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(full, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.out).unwrap_or_else(|e| panic!("not JSON ({e}): {}", run.out))
}

fn catalog_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let run = bfly(dir.path(), &["catalog", "generate"]);
    assert_eq!(run.code, 0, "{}", run.err);
    dir
}

#[test]
fn validate_a_correct_table() {
    let dir = catalog_dir();
    let run = bfly(dir.path(), &["validate", "z4"]);
    assert_eq!(run.code, 0);
    assert!(run.out.contains("kind: group"));
}

#[test]
fn cohomology_report() {
    let dir = catalog_dir();
    let run = bfly(dir.path(), &["--json", "oracle", "cohomology", "--module", "z2-z2-triv", "--degree", "2"]);
    assert_eq!(run.code, 0, "{}", run.err);
    let v = json(&run);
    assert_eq!(v["order"], 2);
    assert_eq!(v["invariants"], serde_json::json!([2]));
    let run = bfly(dir.path(), &["--json", "oracle", "cohomology", "--module", "z2-z3-a1", "--degree", "3"]);
    assert_eq!(json(&run)["order"], 1);
}

#[test]
fn beta_of_an_identity_butterfly() {
    let dir = catalog_dir();
    assert_eq!(bfly(dir.path(), &["butterfly", "identity", "--xext", "z4-sign", "--out", "id-butterfly"]).code, 0);
    let run = bfly(dir.path(), &["--json", "butterfly", "beta", "--in", "id-butterfly"]);
    assert_eq!(run.code, 0, "{}", run.err);
    assert_eq!(json(&run)["identity"], true);
}

#[test]
fn catalog_documents_round_trip_byte_for_byte() {
    let dir = catalog_dir();
    let ws = Workspace::new(Some(dir.path().to_path_buf()), DEFAULT_ORDER_CAP);
    let manifest = Manifest::read(dir.path()).unwrap().unwrap();
    assert!(manifest.documents.len() > 100);
    for (file, entry) in &manifest.documents {
        let text = fs::read_to_string(dir.path().join(file)).unwrap();
        let doc = ws.load(file).unwrap();
        assert_eq!(doc.kind(), entry.kind);
        assert_eq!(doc.to_json(), text, "{file}");
    }
}

#[test]
fn truncated_file_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cut.json"), "{\"kind\": \"group\", \"order\": 2, \"table\": [[0, 1], [1").unwrap();
    let run = bfly(dir.path(), &["validate", "cut"]);
    assert_eq!(run.code, 1);
    assert!(run.err.contains("schema error"), "{}", run.err);
}

#[test]
fn schema_errors_carry_a_pointer() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), r#"{"kind": "group", "order": 2, "table": [[0, 1], [1, "x"]]}"#).unwrap();
    let run = bfly(dir.path(), &["validate", "bad"]);
    assert_eq!(run.code, 1);
    assert!(run.err.contains("/table/1/1"), "{}", run.err);
}

#[test]
fn broken_associativity_is_reported_verbatim() {
    let dir = tempfile::tempdir().unwrap();
    let table = r#"{"kind": "group", "order": 5, "table": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#;
    fs::write(dir.path().join("loop.json"), table).unwrap();
    let run = bfly(dir.path(), &["validate", "loop"]);
    assert_eq!(run.code, 1);
    assert!(run.err.contains("not associative"), "{}", run.err);
}

#[test]
fn tampering_is_caught_by_the_manifest() {
    let dir = catalog_dir();
    let path = dir.path().join("z3.json");
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replace("\"order\": 3", "\"order\":3")).unwrap();
    let run = bfly(dir.path(), &["validate", "z3"]);
    assert_eq!(run.code, 1);
    assert!(run.err.contains("manifest"), "{}", run.err);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let run = bfly(dir.path(), &["validate", "missing"]);
    assert_eq!(run.code, 2);
    let run = bfly(dir.path(), &["oracle", "cohomology", "--module", "m", "--degre", "2"]);
    assert_eq!(run.code, 2);
    assert!(run.err.contains("--degre"), "{}", run.err);
    let run = bfly(dir.path(), &["verify", "nonsense"]);
    assert_eq!(run.code, 2);
    assert!(run.err.contains("unknown suite"));
}

#[test]
fn saved_results_enter_the_manifest() {
    let dir = catalog_dir();
    let run = bfly(dir.path(), &["h3", "tensor", "--left", "z4-sign", "--right", "z4-sign", "--out", "square"]);
    assert_eq!(run.code, 0, "{}", run.err);
    let manifest = Manifest::read(dir.path()).unwrap().unwrap();
    assert_eq!(manifest.documents["square.json"].kind, "crossed-extension");
    let run = bfly(dir.path(), &["--json", "oracle", "class", "--xext", "square"]);
    assert_eq!(json(&run)["class"], 0);
    let run = bfly(dir.path(), &["--json", "oracle", "class", "--xext", "z4-sign", "--seed", "11"]);
    assert_eq!(json(&run)["class"], 1);
    assert!(dir.path().join(MANIFEST).is_file());
}

#[test]
fn documents_print_to_stdout() {
    let dir = catalog_dir();
    let run = bfly(dir.path(), &["h2", "unit", "--module", "z2-z2-triv"]);
    assert_eq!(run.code, 0);
    assert_eq!(json(&run)["kind"], "extension");
    let run = bfly(dir.path(), &["oracle", "bridge", "--module", "z2-z2-triv", "--class", "1", "--out", "nonsplit"]);
    assert_eq!(run.code, 0, "{}", run.err);
    let run = bfly(dir.path(), &["--json", "oracle", "class", "--extension", "nonsplit"]);
    assert_eq!(json(&run)["class"], 1);
    let run = bfly(dir.path(), &["butterfly", "phi", "--extension", "nonsplit"]);
    assert_eq!(json(&run)["kind"], "butterfly");
}

#[test]
fn inverse_witness_flips_back() {
    let dir = catalog_dir();
    for args in [
        vec!["butterfly", "inverse-witness", "--xext", "z9-a4", "--out", "w"],
        vec!["butterfly", "flip", "--in", "w", "--out", "back"],
        vec!["butterfly", "compose", "--first", "w", "--second", "back", "--out", "loop"],
        vec!["h3", "tensor", "--left", "z9-a4", "--right", "z9a4-inverse", "--out", "t"],
        vec!["butterfly", "identity", "--xext", "t", "--out", "id"],
    ] {
        let run = bfly(dir.path(), &args);
        assert_eq!(run.code, 0, "{args:?}: {}", run.err);
    }
    let run = bfly(dir.path(), &["--json", "--cap", "1024", "butterfly", "iso", "--left", "loop", "--right", "id"]);
    assert_eq!(run.code, 0, "{}", run.err);
    assert_eq!(json(&run)["isomorphic"], true);
}

#[test]
fn a_single_suite_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let run = bfly(dir.path(), &["--json", "verify", "h2-automorphisms"]);
    assert_eq!(run.code, 0, "{}", run.out);
    let v = json(&run);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["suite"], "h2-automorphisms");
}

#[test]
fn binary_help_and_version() {
    let bin = env!("CARGO_BIN_EXE_bfly");
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));
    let out = Command::new(bin).arg("--no-such-flag").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
