use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonsolv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("structured output is JSON")
}

#[test]
fn analyze_sl25() {
    let o = run(&[
        "analyze",
        &data("groups/sl25.group"),
        "--format",
        "structured",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schemaVersion"], 1);
    let r = &v["report"];
    assert_eq!(r["order"], 120);
    assert_eq!(r["solvable"]["solvable"], false);
    assert_eq!(r["threePo"]["present"], false);
    assert_eq!(r["threePpo"]["present"], true);
    assert_eq!(r["threeSs"]["present"], true);
    assert_eq!(r["thompson"]["present"], true);
    assert_eq!(r["consistencyFlags"].as_array().unwrap().len(), 0);
    assert!(r.get("timingsMs").is_none());
}

#[test]
fn analyze_s4_and_a5() {
    let v = json(&run(&[
        "analyze",
        &data("groups/s4.group"),
        "--format",
        "structured",
    ]));
    let r = &v["report"];
    assert_eq!(r["solvable"]["solvable"], true);
    for key in ["thompson", "kaplanLevy", "threePo", "threePpo", "threeSs"] {
        assert_eq!(r[key]["present"], false, "{key}");
    }
    let v = json(&run(&[
        "analyze",
        &data("groups/a5.group"),
        "--format",
        "structured",
    ]));
    assert_eq!(v["report"]["solvable"]["solvable"], false);
    assert_eq!(v["report"]["threePo"]["present"], true);
}

#[test]
fn analyze_text_and_timings() {
    let o = run(&["analyze", &data("groups/a5.group"), "--timings"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("3PO          yes"));
    assert!(text.contains("timings"));
}

#[test]
fn check_exit_statuses() {
    let o = run(&["check", &data("groups/sl25.group"), "3po"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no triple of distinct prime orders"));

    let o = run(&[
        "check",
        &data("groups/sl25.group"),
        "3ppo",
        "--format",
        "structured",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let mut orders: Vec<u64> = v["triple"]["orders"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    orders.sort_unstable();
    assert_eq!(orders, [3, 4, 5]);
    assert_eq!(v["triple"]["elements"].as_array().unwrap().len(), 3);

    let o = run(&["check", &data("groups/s4.group"), "thompson"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["check", &data("groups/a5.group"), "3ss"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "check",
        &data("groups/a5.group"),
        "kl",
        "--format",
        "structured",
    ]);
    assert_eq!(json(&o)["triple"]["oddPrime"], 3);
}

#[test]
fn fast_mode_absence_is_not_a_proof() {
    let o = run(&["check", &data("groups/a5.group"), "3ss", "--mode", "fast"]);
    assert!(!matches!(o.status.code(), Some(0) | Some(1)));
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn unknown_condition_is_a_usage_error() {
    let o = run(&["check", &data("groups/a5.group"), "4po"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn count_triples_examples() {
    let o = run(&[
        "count-triples",
        &data("groups/sl25.group"),
        "--classes",
        "2,3A,5A",
        "--method",
        "both",
        "--table",
        &data("tables/2a5.table"),
        "--format",
        "structured",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["brute"], 0);
    assert_eq!(v["character"], 0);
    assert_eq!(v["agree"], true);

    let o = run(&[
        "count-triples",
        &data("groups/sl25.group"),
        "--classes",
        "1A,1A,1A",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("brute      1"));

    let o = run(&[
        "count-triples",
        &data("groups/a5.group"),
        "--classes",
        "2A,3A,5A",
        "--method",
        "both",
        "--table",
        &data("tables/a5.table"),
        "--format",
        "structured",
    ]);
    let v = json(&o);
    assert!(v["brute"].as_u64().unwrap() > 0);
    assert_eq!(v["brute"], v["character"]);
}

#[test]
fn count_triples_errors() {
    let sl25 = data("groups/sl25.group");
    let cases: Vec<Vec<&str>> = vec![
        vec!["count-triples", &sl25, "--classes", "5,3A,2A"],
        vec!["count-triples", &sl25, "--classes", "9Z,3A,2A"],
        vec!["count-triples", &sl25, "--classes", "2A,3A"],
        vec![
            "count-triples",
            &sl25,
            "--classes",
            "2A,3A,5A",
            "--method",
            "character",
        ],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let a5_table = data("tables/a5.table");
    let o = run(&[
        "count-triples",
        &sl25,
        "--classes",
        "2A,3A,5A",
        "--method",
        "both",
        "--table",
        &a5_table,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("table"));
}

#[test]
fn bad_inputs_are_operational_errors() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.group");
    std::fs::write(&broken, "{ not json").unwrap();
    let o = run(&["analyze", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.group"));

    let o = run(&["analyze", &data("groups/sl25.group"), "--max-order", "50"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&[
        "analyze",
        dir.path().join("missing.group").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_builtin_catalog() {
    let o = run(&["scan", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
    assert_eq!(v["alarms"].as_array().unwrap().len(), 0);
    assert_eq!(v["passed"], true);
    let sl25 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "SL(2,5)")
        .unwrap();
    assert_eq!(sl25["report"]["threePo"]["present"], false);
    assert_eq!(sl25["report"]["threePpo"]["present"], true);
}

#[test]
fn scan_directories() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["scan", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 group(s)"));

    std::fs::copy(data("groups/a5.group"), dir.path().join("a5.group")).unwrap();
    std::fs::write(
        dir.path().join("s3.group"),
        r#"{"name": "S3", "kind": "permutation", "degree": 3, "generators": ["(1 2)", "(1 2 3)"],
            "expected": {"order": 6, "solvable": true, "simple": false}}"#,
    )
    .unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let o = run(&[
        "scan",
        "--dir",
        dir.path().to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["rows"].as_array().unwrap().len(), 2);

    std::fs::write(dir.path().join("zz.group"), "[]").unwrap();
    let o = run(&[
        "scan",
        "--dir",
        dir.path().to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert!(v["rows"][2]["error"].is_string());
}

#[test]
fn wrong_expected_facts_fail_the_scan() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("s3.group"),
        r#"{"name": "S3", "kind": "permutation", "degree": 3, "generators": ["(1 2)", "(1 2 3)"],
            "expected": {"order": 6, "solvable": false, "simple": false}}"#,
    )
    .unwrap();
    let o = run(&["scan", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--format", "structured"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
