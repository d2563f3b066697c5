use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn graceful(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graceful"))
        .args(args)
        .env_remove("GRACEFUL_PATH_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_of(o: &Output) -> Value {
    let err: Value = serde_json::from_slice(&o.stderr).expect("stderr holds a JSON error object");
    err["error"].clone()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn verify(dir: &Path, doc: &str) -> Value {
    let file = write(dir, "verify.json", doc);
    let o = graceful(&["verify", "--graph", &file]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn every_labeled_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let runs: &[&[&str]] = &[
        &[
            "spider", "short", "--long", "11", "--two", "2", "--one", "0",
        ],
        &["spider", "short", "--long", "7", "--two", "1", "--one", "3"],
        &["spider", "doubling", "--legs", "1,6,14"],
        &["spider", "doubling", "--legs", "20,1,9"],
        &["spider", "three-long", "--legs", "4,3,3,2,2"],
        &["path", "alpha", "--n", "9", "--end-label", "4"],
        &["path", "alpha", "--n", "10", "--zero-at", "4"],
        &["path", "graceful", "--n", "5", "--zero-at", "2"],
        &["path", "zigzag", "--n", "6"],
    ];
    for args in runs {
        let o = graceful(args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let report = verify(dir.path(), &stdout(&o));
        assert_eq!(report["graceful"], true, "{args:?}");
    }
}

#[test]
fn alpha_paths_report_their_index() {
    let dir = tempfile::tempdir().unwrap();
    let o = graceful(&[
        "path",
        "alpha",
        "--n",
        "8",
        "--end-label",
        "5",
        "--index",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(verify(dir.path(), &stdout(&o))["alpha_index"], 3);
}

#[test]
fn excluded_end_label_is_an_input_error() {
    let o = graceful(&["path", "alpha", "--n", "5", "--end-label", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = error_of(&o);
    assert_eq!(err["kind"], "infeasible");
    assert!(err["message"].as_str().unwrap().contains("P_5"));
}

#[test]
fn growth_failure_is_a_validation_error() {
    let o = graceful(&["spider", "doubling", "--legs", "1,5,12"]);
    assert_eq!(o.status.code(), Some(2));
    let err = error_of(&o);
    assert_eq!(err["kind"], "validation");
    assert!(err["message"].as_str().unwrap().contains("at least 6"));
}

#[test]
fn bad_arguments_exit_2() {
    for args in [
        &["spider", "short"][..],
        &["spider", "doubling", "--legs", "1,x"],
        &["oracle", "--graph", "missing.json"],
        &["path", "zigzag", "--n", "4", "--budget", "0"],
        &["frobnicate"],
    ] {
        let o = graceful(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        error_of(&o);
    }
    assert_eq!(graceful(&["--help"]).status.code(), Some(0));
}

#[test]
fn export_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let messy = write(
        dir.path(),
        "messy.json",
        r#"{"legs":[[1,2],[3]],"center":0,"labels":{"3":1,"0":0,"2":2,"1":3},"edges":[[2,1],[3,0],[0,1]],"n":4}"#,
    );
    let first = graceful(&["export", "--graph", &messy]);
    assert_eq!(first.status.code(), Some(0));
    let canonical = write(dir.path(), "canonical.json", &stdout(&first));
    let second = graceful(&["export", "--graph", &canonical]);
    assert_eq!(stdout(&first), stdout(&second));
    let doc: Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(doc["edges"], serde_json::json!([[0, 1], [0, 3], [1, 2]]));
}

#[test]
fn dot_output_shows_labels_and_differences() {
    let o = graceful(&[
        "spider", "short", "--long", "10", "--two", "2", "--format", "dot",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph tree {"));
    // x0 = 0 and x1 = 10 give edge text 10.
    assert!(dot.contains("  1 [label=\"10\"];"));
    assert!(dot.contains("  0 -- 1 [label=\"10\"];"));
}

#[test]
fn verify_reports_non_graceful_and_rejects_partial_labels() {
    let dir = tempfile::tempdir().unwrap();
    let report = verify(
        dir.path(),
        r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4]],"labels":{"0":3,"1":0,"2":4,"3":1,"4":2}}"#,
    );
    assert_eq!(report["graceful"], false);
    assert_eq!(report["alpha_index"], Value::Null);
    let partial = write(
        dir.path(),
        "partial.json",
        r#"{"n":2,"edges":[[0,1]],"labels":{"0":0}}"#,
    );
    let o = graceful(&["verify", "--graph", &partial]);
    assert_eq!(o.status.code(), Some(2));
    assert!(error_of(&o)["message"]
        .as_str()
        .unwrap()
        .contains("partial"));
}

#[test]
fn attach_reproduces_the_shift() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "g.json",
        r#"{"n":7,"edges":[[0,1],[0,2],[2,3],[0,4],[4,5],[5,6]],"labels":{"0":0,"1":6,"2":5,"3":1,"4":3,"5":4,"6":2}}"#,
    );
    let o = graceful(&[
        "attach",
        "--graph",
        &g,
        "--vertex",
        "4",
        "--path-len",
        "7",
        "--trace",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let g_side: Vec<u64> = (0..7)
        .map(|v| doc["labels"][v.to_string()].as_u64().unwrap())
        .collect();
    assert_eq!(g_side, vec![3, 9, 8, 4, 6, 7, 5]);
    let trace: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(trace["trace"][0]["params"]["bridge_label"], 7);

    let o = graceful(&["attach", "--graph", &g, "--vertex", "1", "--path-len", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(error_of(&o)["message"]
        .as_str()
        .unwrap()
        .contains("f(u) + floor(n/2) + 1 <= n"));
}

#[test]
fn amalgamate_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "g.json",
        r#"{"n":3,"edges":[[0,1],[1,2]],"labels":{"0":0,"1":2,"2":1}}"#,
    );
    let h = write(
        dir.path(),
        "h.json",
        r#"{"n":2,"edges":[[0,1]],"labels":{"0":0,"1":1}}"#,
    );
    let o = graceful(&[
        "amalgamate",
        "--alpha",
        &g,
        "--u",
        "0",
        "--graceful",
        &h,
        "--v",
        "0",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        doc["labels"],
        serde_json::json!({"0": 1, "1": 3, "2": 0, "3": 2})
    );

    let o = graceful(&[
        "amalgamate",
        "--alpha",
        &g,
        "--u",
        "1",
        "--graceful",
        &h,
        "--v",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(error_of(&o)["message"]
        .as_str()
        .unwrap()
        .contains("u must be labeled"));
}

#[test]
fn oracle_modes() {
    let dir = tempfile::tempdir().unwrap();
    let p5 = write(
        dir.path(),
        "p5.json",
        r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4]]}"#,
    );

    let o = graceful(&["oracle", "--graph", &p5, "--fix", "2=0", "--alpha"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (r["found"].clone(), r["exhausted"].clone()),
        (Value::Bool(false), Value::Bool(true))
    );

    let o = graceful(&["oracle", "--graph", &p5, "--count", "--parallel"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let seq: Value =
        serde_json::from_str(&stdout(&graceful(&["oracle", "--graph", &p5, "--count"]))).unwrap();
    assert_eq!(r["count"], seq["count"]);
    assert_eq!(r["nodes_explored"], seq["nodes_explored"]);

    let o = graceful(&["oracle", "--graph", &p5, "--fix", "0=1"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["found"], true);
    assert_eq!(r["labels"][0], 1);

    let o = graceful(&["oracle", "--graph", &p5, "--count", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["exhausted"], false);
    assert!(r.get("labels").is_none());
}

#[test]
fn closed_form_experiment_flag() {
    let o = graceful(&[
        "spider",
        "short",
        "--long",
        "5",
        "--two",
        "1",
        "--closed-form",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["s"], 1);
    assert!(r["graceful"].is_boolean());
    let o = graceful(&[
        "spider",
        "short",
        "--long",
        "5",
        "--two",
        "2",
        "--closed-form",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cache_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let flag = dir.path().join("flag.json");
    let o = graceful(&[
        "path",
        "graceful",
        "--n",
        "5",
        "--zero-at",
        "2",
        "--cache",
        flag.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let cache: Value = serde_json::from_str(&std::fs::read_to_string(&flag).unwrap()).unwrap();
    assert_eq!(cache["version"], 1);
    assert!(cache["entries"]
        .as_object()
        .unwrap()
        .keys()
        .any(|k| k.contains("5")));

    let env = dir.path().join("env.json");
    let o = Command::new(env!("CARGO_BIN_EXE_graceful"))
        .args(["path", "graceful", "--n", "5", "--zero-at", "2"])
        .env("GRACEFUL_PATH_CACHE", &env)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(env.exists());
    // A second run is answered from the cache even with no search budget.
    let o = Command::new(env!("CARGO_BIN_EXE_graceful"))
        .args([
            "path",
            "graceful",
            "--n",
            "5",
            "--zero-at",
            "2",
            "--budget",
            "1",
        ])
        .env("GRACEFUL_PATH_CACHE", &env)
        .output()
        .unwrap();
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn doubling_trace_goes_to_stderr() {
    let o = graceful(&["spider", "doubling", "--legs", "1,6,14", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let trace: Value = serde_json::from_slice(&o.stderr).unwrap();
    let ops: Vec<&str> = trace["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["operation"].as_str().unwrap())
        .collect();
    assert_eq!(ops, vec!["base", "attach", "attach"]);
    serde_json::from_str::<Value>(&stdout(&o)).unwrap();
}
