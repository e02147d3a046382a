use std::fs;
use std::process::{Command, Output};

fn hforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hforge"))
        .args(args)
        .env_remove("HFORGE_WORKERS")
        .output()
        .expect("run hforge")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn list_prints_the_catalog() {
    let o = hforge(&["list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 34);

    let o = hforge(&["list", "--id", "ID-5"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("Eq. (43)"), "{out}");

    let o = hforge(&["list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 34);
}

#[test]
fn eval_prints_exact_values() {
    let cases: &[(&[&str], &str)] = &[
        (&["eval", "H(n)", "--n", "6"], "49/20"),
        (&["eval", "CS(2,1)"], "s + 2"),
        (&["eval", "PSID(3,1)", "--s", "0"], "3/2"),
        (&["eval", "CS(0,2)", "--s", "-1/2"], "3/8"),
        (&["eval", "(1+x)^2", "--x", "2"], "9"),
    ];
    for (args, want) in cases {
        let o = hforge(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), *want, "{args:?}");
    }
}

#[test]
fn eval_errors_exit_two_with_spans() {
    let o = hforge(&["eval", "1/(n-n)"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("<expr>:1:3: error: division by an identically zero denominator"), "{}", stderr(&o));

    let o = hforge(&["eval", "x/(1+x)", "--x", "-1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("pole at x = -1"));

    let o = hforge(&["eval", "H(n"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_exit_codes() {
    let o = hforge(&["verify", "--id", "ID-13", "--m", "2,3,4,5", "--n-max", "10"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = hforge(&["verify", "--id", "INTRO-2", "--variant", "printed", "--n-max", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("lhs=2 rhs=16"), "{}", stdout(&o));

    // The default grid carries the printed form as an expected failure.
    let o = hforge(&["verify", "--id", "INTRO-2", "--n-max", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = hforge(&["verify", "--id", "ID-14", "--m", "3", "--variant", "printed", "--n-max", "2"]);
    assert_eq!(code(&o), 1);

    let o = hforge(&["verify", "--id", "THM-2.6", "--n-max", "4", "--oracle", "both"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("sampling=agree integer-s=agree"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify"][..],
        &["verify", "--id", "ID-99"],
        &["verify", "--all", "--n-min", "5", "--n-max", "2"],
        &["verify", "--all", "--n-min", "0"],
        &["verify", "--id", "ID-13", "--m", "1"],
        &["verify", "--all", "--workers", "0"],
        &["frobnicate"],
        &["dsl", "/definitely/not/here.ids"],
    ] {
        assert_eq!(code(&hforge(args)), 2, "{args:?}");
    }
}

#[test]
fn dsl_corpus_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ids");
    fs::write(&bad, "OK : n == n\nBAD : H(n == n\n").unwrap();
    let o = hforge(&["dsl", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.ids:2:11: error: expected ')'"), "{}", stderr(&o));

    let wrong = dir.path().join("wrong.ids");
    fs::write(&wrong, "WRONG : H(n) == n\n").unwrap();
    let o = hforge(&["dsl", wrong.to_str().unwrap(), "--n-max", "3"]);
    assert_eq!(code(&o), 1);

    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/paper.ids");
    let o = hforge(&["dsl", corpus, "--n-max", "6", "--format", "csv", "--no-timing"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 1 + 38 * 6);
}

#[test]
fn json_report_matches_golden_and_is_stable() {
    let args = [
        "verify", "--id", "ID-5,INTRO-2", "--n-max", "2", "--format", "json", "--no-timing", "--workers", "1",
    ];
    let first = stdout(&hforge(&args));
    let second = stdout(&hforge(&args));
    assert_eq!(first, second);
    assert_eq!(first, include_str!("golden/verify.json"));

    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    for key in ["tool_version", "config", "rows", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let row = &v["rows"][0];
    for key in ["id", "n", "params", "passed", "expected_fail"] {
        assert!(row.get(key).is_some(), "{key}");
    }
    assert!(row.get("elapsed_ns").is_none());

    let timed = stdout(&hforge(&["verify", "--id", "ID-5", "--n-max", "1", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&timed).unwrap();
    assert!(v["rows"][0]["elapsed_ns"].is_u64());
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = hforge(&["verify", "--id", "ID-17", "--n-max", "2", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("id,params,n,passed"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn bench_rows_and_header() {
    let o = hforge(&["bench", "--id", "THM-2.1", "--n-max", "3", "--workers", "1,4", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("id,n,workers,memo,nanos"));
    assert_eq!(lines.count(), 3 * 2);

    let o = hforge(&["bench", "--id", "ID-5", "--n-max", "2", "--memo", "on,off", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 2 * 2);
}

#[test]
fn workers_env_default() {
    let o = Command::new(env!("CARGO_BIN_EXE_hforge"))
        .args(["verify", "--id", "ID-5", "--n-max", "2", "--format", "json", "--no-timing"])
        .env("HFORGE_WORKERS", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["workers"], 3);
}
