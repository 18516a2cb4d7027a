use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const WORKED: &str = r#"{"kind":"curve","genus":2,"rank":3,"degE":6,"rankF":1,"degF":3}"#;
const RANK_FOUR: &str = r#"{"kind":"curve","genus":1,"rank":4,"degE":5,"rankF":2,"degF":4}"#;

fn flagstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn docs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(docs().join(name)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn worked_futaki_report() {
    let out = flagstab(&["futaki", "--model", WORKED, "--flag", "2", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["futaki"], "-13/192");
    assert_eq!(doc["closed_form"], "13/12");
    assert_eq!(doc["verdict"], "destabilised");

    let zero = WORKED.replace(r#""degF":3"#, r#""degF":2"#);
    let doc = json(&flagstab(&["futaki", "--model", &zero, "--flag", "2", "--nu", "1"]));
    assert_eq!(doc["verdict"], "zero");
}

#[test]
fn futaki_reads_model_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    std::fs::write(&path, WORKED).unwrap();
    let out = flagstab(&[
        "futaki",
        "--model",
        path.to_str().unwrap(),
        "--lambda",
        "1,1",
        "--twisted",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["kind"], "twisted");
    assert_eq!(doc["futaki"]["F0"], "0");
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["futaki", "--model", WORKED, "--flag", "4"][..],
        &["futaki", "--model", WORKED][..],
        &["futaki", "--model", WORKED, "--flag", "2", "--lambda", "1"][..],
        &["conjecture", "--rank", "3..x", "--length", "3"][..],
        &["lr", "--lambda", "2,1", "--nu", "1"][..],
        &[
            "weight-check",
            "--genus",
            "0",
            "--f-degrees",
            "2",
            "--g-degrees",
            "1",
            "--lambda",
            "x",
        ][..],
        &["--jobs", "many", "appendix", "--k", "2", "--n", "2"][..],
    ] {
        let out = flagstab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(flagstab(&["--help"]).status.code(), Some(0));
    assert_eq!(flagstab(&["--version"]).status.code(), Some(0));
}

#[test]
fn conjecture_skips_long_partitions() {
    let out = flagstab(&["conjecture", "--rank", "2", "--length", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["summary"]["skipped"], doc["summary"]["cases"]);
    assert_eq!(doc["summary"]["a2_variant"], "proof");
}

#[test]
fn appendix_grid_summary() {
    let out = flagstab(&["batch", docs().join("examples/appendix.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim(), "all 1521 identities match");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,n,identity,brute,closed,match\n"));
    assert_eq!(text.lines().count(), 1522);
}

#[test]
fn empty_sweep() {
    let out = flagstab(&["batch", docs().join("examples/empty.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim(), "0 cases");
    assert_eq!(json(&out)["cases"], serde_json::json!([]));
}

#[test]
fn mixed_models_aggregate() {
    let out = flagstab(&["batch", docs().join("examples/futaki-mixed.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let kinds: Vec<&str> = doc["cases"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|c| c["kind"].as_str())
        .collect();
    assert!(kinds.contains(&"curve") && kinds.contains(&"twisted"));
    let s = &doc["summary"];
    let total: u64 = ["destabilised", "zero", "stable_indicated", "skipped"]
        .iter()
        .map(|k| s[k].as_u64().unwrap())
        .sum();
    assert_eq!(s["cases"].as_u64().unwrap(), total);
}

#[test]
fn unreadable_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"task":"appendix","k":[2,3]}"#).unwrap();
    assert_eq!(flagstab(&["batch", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&path, r#"{"task":"nonsense"}"#).unwrap();
    assert_eq!(flagstab(&["batch", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = flagstab(&[
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
        "schur-ch",
        "--lambda",
        "2,1",
        "--rank",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text,
        "lambda,rank,truncation,schur_rank,ch,oracle_match\n\"[2,1]\",3,2,8,8 + 8c1 + 6c1^2 - 6c2,true\n"
    );
}

#[test]
fn sweeps_are_deterministic_across_worker_counts() {
    let config = docs().join("examples/conjecture.json");
    let config = config.to_str().unwrap();
    let one = flagstab(&["--jobs", "1", "batch", config]);
    let many = flagstab(&["--jobs", "8", "batch", config]);
    let again = Command::new(env!("CARGO_BIN_EXE_flagstab"))
        .env("FLAGSTAB_JOBS", "3")
        .args(["batch", config])
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn reports_match_published_schema() {
    let reports = schema("report.schema.json");
    let configs = schema("sweep-config.schema.json");
    for entry in std::fs::read_dir(docs().join("examples")).unwrap() {
        let path = entry.unwrap().path();
        let config: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_valid(&configs, &config);
        let out = flagstab(&["--format", "json", "batch", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
        assert_valid(&reports, &json(&out));
    }
    for args in [
        &["futaki", "--model", RANK_FOUR, "--flag", "3,1"][..],
        &["futaki", "--model", WORKED, "--lambda", "2,1", "--twisted"][..],
        &["schur-ch", "--lambda", "3,1", "--rank", "4", "--method", "giambelli"][..],
        &["lr", "--lambda", "3,2,1", "--ranks", "2,2"][..],
        &["lr", "--lambda", "3,2,1", "--nu", "2,1", "--mu", "2,1"][..],
        &[
            "weight-check",
            "--genus",
            "1",
            "--f-degrees",
            "3,1",
            "--g-degrees",
            "-1",
            "--lambda",
            "2,1",
        ][..],
        &["appendix", "--k", "1..4", "--n", "3", "--exponents", "1,1"][..],
        &["conjecture", "--rank", "2..4", "--length", "1..3", "--parts", "2"][..],
    ] {
        let out = flagstab(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_valid(&reports, &json(&out));
    }
}

#[test]
fn schema_rejects_float_rationals() {
    let reports = schema("report.schema.json");
    let mut doc = json(&flagstab(&["futaki", "--model", WORKED, "--flag", "2"]));
    doc["futaki"] = serde_json::json!(-0.0677);
    assert!(!reports.is_valid(&doc));
}
