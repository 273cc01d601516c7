use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fano"))
        .args(args)
        .env("FANO_LOG", "error")
        .output()
        .expect("run fano")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/analysis_report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(instance: &Value) {
    let schema = schema();
    let v = jsonschema::validator_for(&schema).unwrap();
    let errs: Vec<String> = v.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errs.is_empty(), "schema errors: {errs:?}");
}

#[test]
fn analyze_reports_validate_against_schema() {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("p2.json", r#"{"dim": 2, "vertices": [[1, 0], [0, 1], [-1, -1]]}"#),
        ("y2.json", r#"{"dim": 2, "vertices": [[-2, 1], [2, 1], [2, -1], [-2, -1]]}"#),
        ("p114.json", r#"{"dim": 2, "vertices": [[1, 0], [0, 1], [-1, -4]]}"#),
        ("x5.json", r#"{"dim": 3, "vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -5]]}"#),
    ];
    let mut reports = Vec::new();
    for (name, body) in files {
        let p = write(dir.path(), name, body);
        let o = fano(&["--json", "analyze", p.to_str().unwrap()]);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_valid(&v);
        reports.push(v);
    }
    assert_eq!(reports[0]["degree"], "9");
    assert_eq!(reports[0]["surface"]["ke"]["ke_toric"], true);
    assert_eq!(reports[1]["degree"], "2");
    assert_eq!(reports[1]["surface"]["smoothable"], true);
    assert_eq!(reports[2]["surface"]["ke"]["ke_toric"], false);
    assert_eq!(reports[2]["surface"]["bishop"], "obstructed");
    assert_eq!(reports[3]["threefold"]["conical"], "obstructed");
    assert!(reports[3].get("surface").is_none());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p2.json", r#"{"dim": 2, "vertices": [[1, 0], [0, 1], [-1, -1]]}"#);
    let out = dir.path().join("r.txt");
    let o = fano(&["analyze", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.contains("degree:      9"));
    assert!(text.contains("KE:          true"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"dim": 2, "vertices": [[1, 0]"#);
    assert_eq!(fano(&["analyze", bad.to_str().unwrap()]).status.code(), Some(3));
    let nonprim = write(dir.path(), "np.json", r#"{"dim": 2, "vertices": [[2, 0], [0, 1], [-1, -1]]}"#);
    assert_eq!(fano(&["analyze", nonprim.to_str().unwrap()]).status.code(), Some(2));
    let outside = write(dir.path(), "o.json", r#"{"dim": 2, "vertices": [[1, 0], [0, 1], [1, 1]]}"#);
    assert_eq!(fano(&["analyze", outside.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(fano(&["obstruct3", "--d", "0"]).status.code(), Some(2));
    let asym = write(
        dir.path(),
        "asym.json",
        r#"{"size": 3, "A": [[1, 1, 0], [0, 1, 0], [0, 0, 1]], "B": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#,
    );
    assert_eq!(fano(&["pencil", asym.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(fano(&["analyze", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn obstruct3_line() {
    let o = fano(&["obstruct3", "--d", "5"]);
    assert_eq!(stdout(&o), "degree 512/5, LHS 512 > 100: obstructed\n");
    let o = fano(&["obstruct3", "--d", "1"]);
    assert_eq!(stdout(&o), "degree 64, LHS 64 < 100: consistent\n");
}

#[test]
fn enumerate_index_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("classes.jsonl");
    let o = fano(&["enumerate", "--max-index", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("16 classes, 5 barycenter-zero\n"));
    let lines = std::fs::read_to_string(&out).unwrap();
    assert_eq!(lines.lines().count(), 16);
    // The JSON-lines file is accepted back by batch mode.
    let o = fano(&["--json", "batch", out.to_str().unwrap()]);
    assert!(o.status.success());
    let reports: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 16);
    for r in &reports {
        assert_valid(r);
        assert_eq!(r["surface"]["summary"]["reflexive"], true);
    }
    assert!(String::from_utf8_lossy(&o.stderr).contains("16 analyzed, 0 skipped"));
}

#[test]
fn enumerate_rejects_small_box() {
    assert_eq!(fano(&["enumerate", "--max-index", "2", "--box", "1"]).status.code(), Some(2));
}

#[test]
fn classify_rank1_and_table() {
    let o = fano(&["classify-rank1"]);
    let s = stdout(&o);
    assert!(s.starts_with("3 classes\n"));
    assert!(s.contains("3×A_2"));
    assert!(s.contains("2×1/9(1,2) + A_8"));
    let o = fano(&["--json", "verify-table", "--y-max", "6"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["table"].as_array().unwrap().len(), 7);
    assert_eq!(v["y_family"][3]["mumford_unstable"], true);
}

#[test]
fn pencil_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let stable = write(
        dir.path(),
        "s.json",
        r#"{"size": 5, "A": [[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1]],
            "B": [[0,0,0,0,0],[0,1,0,0,0],[0,0,2,0,0],[0,0,0,3,0],[0,0,0,0,4]]}"#,
    );
    let o = fano(&["pencil", stable.to_str().unwrap()]);
    assert!(stdout(&o).contains("verdict: stable"));
    let split = write(
        dir.path(),
        "t.json",
        r#"{"size": 6, "A": [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]],
            "B": [["1/2",0,0,0,0,0],[0,"1/2",0,0,0,0],[0,0,"1/2",0,0,0],[0,0,0,3,0,0],[0,0,0,0,3,0],[0,0,0,0,0,3]]}"#,
    );
    let o = fano(&["--json", "pencil", split.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["stability"], "strictly_polystable");
    let degenerate = write(
        dir.path(),
        "d.json",
        r#"{"size": 3, "A": [[1,1,0],[1,1,0],[0,0,0]], "B": [[0,0,0],[0,0,0],[0,0,1]]}"#,
    );
    let o = fano(&["pencil", degenerate.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: unstable (degenerate pencil"));
}

#[test]
fn batch_skips_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let db = write(
        dir.path(),
        "db.jsonl",
        "{\"dim\": 2, \"vertices\": [[1, 0], [0, 1], [-1, -1]]}\n{oops\n{\"dim\": 2, \"vertices\": [[1, 0], [0, 1], [-1, -3]]}\n",
    );
    let o = fano(&["batch", db.to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.trim_end().ends_with("2 analyzed, 1 skipped"));
    assert!(s.find("degree:      9").unwrap() < s.find("degree:      25/3").unwrap());
}

#[test]
fn json_and_text_conflict() {
    assert_eq!(fano(&["--json", "--text", "obstruct3", "--d", "2"]).status.code(), Some(2));
}
