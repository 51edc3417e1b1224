use std::process::{Command, Output};

use serde_json::Value;

fn idverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idverify")).args(args).env_remove("IDVERIFY_PROFILE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_one_entry() {
    let o = idverify(&["verify", "--filter", "id=amm-12398", "--profile", "full"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().filter(|l| l.starts_with("amm-12398")).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].contains(" pass "));
}

#[test]
fn list_products() {
    let o = idverify(&["list", "--filter", "category=product"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("mm-2147 ")));
    assert!(text.lines().all(|l| l.split_whitespace().nth(1) == Some("product")));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(idverify(&["verify", "--filter", "id=bogus"]).status.code(), Some(2));
    assert_eq!(idverify(&["verify", "--filter", "colour=red"]).status.code(), Some(2));
    assert_eq!(idverify(&["verify", "--profile", "medium"]).status.code(), Some(2));
    assert_eq!(idverify(&["verify", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(idverify(&["verify", "--tol-scale", "-1"]).status.code(), Some(2));
    assert_eq!(idverify(&["show", "bogus"]).status.code(), Some(2));
    assert_eq!(idverify(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failing_entries_exit_one() {
    // tolerances shrunk far below rounding make inexact entries fail
    let o = idverify(&["verify", "--filter", "id=mm-2223", "--tol-scale", "1e-12"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(" fail "));
}

#[test]
fn show_prints_fields() {
    let o = idverify(&["show", "crux-4988"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for field in ["id:", "source:", "category:", "statement:", "expected:", "tol:", "quote:"] {
        assert!(text.contains(field), "missing {field}");
    }
}

#[test]
fn profile_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_idverify")).args(["show", "amm-12398"]).env("IDVERIFY_PROFILE", "fast").output().unwrap();
    assert!(stdout(&o).contains("under the fast profile"));
    let o = Command::new(env!("CARGO_BIN_EXE_idverify"))
        .args(["show", "amm-12398", "--profile", "full"])
        .env("IDVERIFY_PROFILE", "fast")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("under the full profile"));
}

#[test]
fn json_round_trip_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let md = dir.path().join("r.md");
    let o = idverify(&[
        "verify",
        "--filter",
        "category=series,category=product",
        "--profile",
        "fast",
        "--jobs",
        "3",
        "--json",
        json.to_str().unwrap(),
        "--md",
        md.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));

    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["profile"], "fast");
    assert_eq!(v["seed"], 0);
    assert!(v["engine_version"].is_string() && v["timestamp"].is_string());
    let outcomes = v["outcomes"].as_array().unwrap();
    let count = |s: &str| outcomes.iter().filter(|o| o["status"] == s).count() as u64;
    assert_eq!(v["summary"]["pass"].as_u64().unwrap(), count("pass"));
    assert_eq!(v["summary"]["fail"].as_u64().unwrap(), count("fail"));
    assert_eq!(v["summary"]["error"].as_u64().unwrap(), count("error"));
    let ids: Vec<_> = outcomes.iter().map(|o| o["id"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
    for o in outcomes {
        for key in ["computed", "expected", "abs_err", "kernel_err", "tol", "seconds"] {
            assert!(o[key].is_f64(), "{key}");
        }
    }

    let report = std::fs::read_to_string(&md).unwrap();
    assert!(report.contains("## series ("));
    assert!(report.contains("## product ("));
}

#[test]
fn jobs_do_not_change_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str, name: &str| {
        let path = dir.path().join(name);
        let o = idverify(&["verify", "--filter", "category=limit", "--profile", "fast", "--jobs", jobs, "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        for o in v["outcomes"].as_array_mut().unwrap() {
            o.as_object_mut().unwrap().remove("seconds");
        }
        v["outcomes"].clone()
    };
    assert_eq!(run("1", "a.json"), run("4", "b.json"));
}
