use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn frame(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../frames")
        .join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn hp0(args: &[&str], input: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hp0"))
        .args(args)
        .arg(input)
        .env_remove("HP0_THREADS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn hilbert_table_for_the_triangle() {
    let out = hp0(
        &["hilbert", "--d-max", "3", "--format", "tsv"],
        &frame("tri.frame"),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let dims: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(dims, ["1", "3", "5", "7"]);
}

#[test]
fn report_on_three_points_on_a_line() {
    let out = hp0(&["report"], &frame("u13.frame"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["degeneration_ok"], true);
    assert_eq!(v["h"], serde_json::json!([1, 0]));
    for f in v["fiber_checks"].as_array().unwrap() {
        assert_eq!(f["dim"], 1);
        assert_eq!(f["stabilized"], true);
    }
    assert_eq!(v["ok"], true);
    assert!(v["checks"].as_object().unwrap().values().all(|c| c == true));
    assert_eq!(v["sheaf"]["mes"]["mode"], "full");
}

#[test]
fn report_keys() {
    let v = json_of(&hp0(&["report", "--d-max", "4"], &frame("square.frame")));
    for key in [
        "hilbert",
        "h_poly",
        "k",
        "central_fiber",
        "degeneration_ok",
        "fiber_checks",
        "oracle",
        "broken_circuits",
        "f",
        "h",
        "ih_betti",
        "dual_top_h_ok",
        "sheaf",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["h_poly"], serde_json::json!([1, 1]));
    assert!(v["fiber_checks"][0]["lambda"].is_array());
    assert!(v["fiber_checks"][0]["seed"].is_u64());
}

#[test]
fn identity_frame_has_no_circuits() {
    let out = hp0(&["circuits"], &frame("identity3.json"));
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["circuits"], serde_json::json!([]));
    assert_eq!(v["broken_circuits"], serde_json::json!([]));
}

#[test]
fn non_unimodular_input_cites_the_minor() {
    let path = scratch("nontu.frame", "2 3\n1 1 0\n-1 1 1\n");
    let out = hp0(&["circuits"], &path);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("rows [1, 2]") && err.contains("columns [1, 2]"),
        "{err}"
    );
}

#[test]
fn malformed_input_is_an_input_error() {
    let cases = [
        ("short.frame", "2 3\n1 0 1\n"),
        ("token.frame", "1 3\n1 x 1\n"),
        ("json.frame", "{\"k\": 1, \"n\": 2, \"rows\": [[1, 1, 1]]}"),
    ];
    for (name, text) in cases {
        let out = hp0(&["hilbert"], &scratch(name, text));
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(!out.stderr.is_empty());
    }
    let token = hp0(&["hilbert"], &scratch("token2.frame", "1 3\n1 x 1\n"));
    assert!(String::from_utf8(token.stderr)
        .unwrap()
        .contains("line 2, column 3"));
    let missing = hp0(&["hilbert"], &frame("does-not-exist.frame"));
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn bad_flags_are_input_errors() {
    let tri = frame("tri.frame");
    assert_eq!(
        hp0(&["flats", "--ordering", "1,1,2"], &tri).status.code(),
        Some(1)
    );
    assert_eq!(
        hp0(&["flats", "--ordering", "0,1,2"], &tri).status.code(),
        Some(1)
    );
    assert_eq!(
        hp0(&["fiber", "--lambda", "1"], &tri).status.code(),
        Some(1)
    );
    assert_eq!(
        hp0(&["fiber", "--lambda", "1,1/0"], &tri).status.code(),
        Some(1)
    );
    assert_eq!(
        hp0(&["hilbert", "--d-max", "many"], &tri).status.code(),
        Some(1)
    );
    assert_eq!(
        hp0(&["hilbert", "--format", "xml"], &tri).status.code(),
        Some(1)
    );
}

#[test]
fn output_is_reproducible() {
    let a = hp0(
        &["report", "--d-max", "5", "--seed", "9"],
        &frame("square.frame"),
    );
    let b = hp0(
        &["report", "--d-max", "5", "--seed", "9"],
        &frame("square.frame"),
    );
    assert_eq!(a.stdout, b.stdout);
    let single = Command::new(env!("CARGO_BIN_EXE_hp0"))
        .args(["report", "--d-max", "5", "--seed", "9"])
        .arg(frame("square.frame"))
        .env("HP0_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, single.stdout);
}

#[test]
fn ordering_changes_broken_circuits_but_not_dimensions() {
    let square = frame("square.frame");
    let base = json_of(&hp0(&["report", "--d-max", "6"], &square));
    let moved = json_of(&hp0(
        &["report", "--d-max", "6", "--ordering", "2,1,4,3"],
        &square,
    ));
    for key in ["hilbert", "h", "central_fiber", "ih_betti"] {
        assert_eq!(base[key], moved[key], "{key}");
    }
    assert_ne!(base["broken_circuits"], moved["broken_circuits"]);
    assert_eq!(moved["ok"], true);
}

#[test]
fn zero_column_gives_the_zero_module() {
    let out = hp0(&["report", "--d-max", "4"], &frame("loop.frame"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["hilbert"], serde_json::json!([0, 0, 0, 0, 0]));
    assert_eq!(v["oracle"], serde_json::json!([0, 0, 0, 0, 0]));
    assert_eq!(v["zero_columns"], serde_json::json!([3]));
}

#[test]
fn paper_degrees_double_the_grading() {
    let v = json_of(&hp0(
        &["hilbert", "--d-max", "2", "--paper-degrees"],
        &frame("tri.frame"),
    ));
    assert_eq!(v["hilbert"], serde_json::json!([1, 0, 3, 0, 5]));
    let out = hp0(
        &[
            "degenerate",
            "--d-max",
            "2",
            "--paper-degrees",
            "--format",
            "tsv",
        ],
        &frame("tri.frame"),
    );
    let degrees: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect();
    assert_eq!(degrees, ["0", "2", "4"]);
}

#[test]
fn explicit_fiber_point() {
    let out = hp0(&["fiber", "--lambda", "1,-2/3"], &frame("tri.frame"));
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["lambda"], serde_json::json!(["1", "-2/3"]));
}

#[test]
fn flats_and_sheaf_commands() {
    let v = json_of(&hp0(&["flats"], &frame("tri.frame")));
    assert_eq!(v["flats"].as_array().unwrap().len(), 5);
    let out = hp0(&["sheaf", "--d-max", "4"], &frame("tri.frame"));
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["stalks"]["{1}"], serde_json::json!([1, 1, 1, 1, 1]));
    assert_eq!(v["stalks"]["{}"], serde_json::json!([1, 0, 0, 0, 0]));
    for key in ["bottom_ok", "free_ok", "flabby_ok", "degeneration_ok"] {
        assert_eq!(v["mes"][key], true);
    }
    let pair = json_of(&hp0(&["sheaf", "--d-max", "3"], &frame("pair.frame")));
    assert_eq!(pair["flats"].as_array().unwrap().len(), 2);
}

#[test]
fn betti_table() {
    let out = hp0(
        &["betti", "--format", "tsv", "--d-max", "3"],
        &frame("tri.frame"),
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "degree\tih_betti\n0\t1\n2\t1\n4\t0\n"
    );
}
