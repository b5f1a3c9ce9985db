use std::path::PathBuf;
use std::process::{Command, Output};

use nygaard_cli::catalog::find;
use nygaard_cli::spec::ModuleSpecFile;

const HAND: &str = r#"{"p":2,"rank":2,"frobenius":[["E^3","u"],["0","1"]],"name":"hand"}"#;

fn nygaard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nygaard"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn spec_file(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}.json"));
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_owned()
}

fn counter_file() -> String {
    let m = find("counter-p2").unwrap().module;
    spec_file("counter-p2", &ModuleSpecFile::from_module(&m).to_json())
}

#[test]
fn report_on_hand_example() {
    let file = spec_file("hand", HAND);
    let out = nygaard(&["report", &file]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("PASS thm1"));
    assert!(!text.contains("FAIL"));

    let out = nygaard(&["report", "--json", &file]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], "nygaard-report/1");
    assert_eq!(doc["weights"], serde_json::json!([0, 3]));
}

#[test]
fn input_errors_exit_2() {
    let file = spec_file("half", r#"{"p":2,"rank":1,"frobenius":[["1/2"]]}"#);
    let out = nygaard(&["report", &file]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(code(&nygaard(&["report", "/nonexistent/spec.json"])), 2);
    assert_eq!(code(&nygaard(&["search", "--p", "2"])), 2);
}

#[test]
fn monitor_violations_need_strict() {
    let file = counter_file();
    assert_eq!(code(&nygaard(&["report", &file])), 0);
    assert_eq!(code(&nygaard(&["report", "--strict", &file])), 1);
    let out = nygaard(&["check", "thm1", &file]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL thm1"));
    assert_eq!(code(&nygaard(&["check", "lemma", &file])), 0);
}

#[test]
fn oracle_and_adapted() {
    let file = spec_file("hand-oracle", HAND);
    let out = nygaard(&["oracle", &file]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).matches("agree").count(), 4);
    let out = nygaard(&["adapted", &file]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("levels {3, 0}"));
}

#[test]
fn search_output_is_independent_of_workers() {
    let run = |workers: &str| {
        let out = nygaard(&[
            "search",
            "--p",
            "3",
            "--rank",
            "2",
            "--weights",
            "0,4",
            "--count",
            "24",
            "--seed",
            "7",
            "--extension",
            "--workers",
            workers,
        ]);
        assert_eq!(code(&out), 0);
        let mut doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        doc["config"]["workers"] = serde_json::Value::Null;
        doc
    };
    let one = run("1");
    assert_eq!(one["generated"], 24);
    assert_eq!(one, run("4"));
}

#[test]
fn catalog_listing() {
    let out = nygaard(&["catalog"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.starts_with("counter-p2") && l.ends_with("[uncertified]")));
    assert!(text.lines().count() > 10);
}
