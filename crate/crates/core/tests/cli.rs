use std::path::Path;
use std::process::{Command, Output};

use twistscope::cli::CACHE_ENV;

fn twistscope(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twistscope"));
    cmd.args(args).env_remove(CACHE_ENV);
    cmd
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

fn cache_files(dir: &Path) -> usize {
    std::fs::read_dir(dir).map(|d| d.count()).unwrap_or(0)
}

#[test]
fn lpoly_genus4_at_17() {
    let (code, out, _) = run(&mut twistscope(&["--no-cache", "lpoly", "x^9+x", "--p", "17"]));
    assert_eq!(code, 0);
    let row = out.lines().find(|l| l.trim_start().starts_with("17")).unwrap();
    let fields: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(fields[1], "-8");
    assert_eq!(fields[2], "ok");
}

#[test]
fn lpoly_records() {
    let (code, out, _) =
        run(&mut twistscope(&["--no-cache", "--format", "records", "lpoly", "y^2 = x^5 - x", "--p", "3"]));
    assert_eq!(code, 0);
    assert_eq!(out, "twistscope-lpoly\tv1\ncurve\tx^5 - x\t0,-1,0,0,0,1\nlpoly\t3\tgood\t0\t1,0,-2,0,9\tok\n");
}

#[test]
fn bad_arguments_exit_2() {
    let (code, _, err) = run(&mut twistscope(&["--no-cache", "lpoly", "x^9+x", "--p", "2"]));
    assert_eq!(code, 2);
    assert!(err.contains("odd prime"), "{err}");

    let (code, _, err) = run(&mut twistscope(&["--no-cache", "lpoly", "x^4+1", "--p", "5"]));
    assert_eq!(code, 2);
    assert!(err.contains("column") && err.contains("even"), "{err}");

    let (code, _, _) = run(&mut twistscope(&["lpoly"]));
    assert_eq!(code, 2);
}

#[test]
fn scan_full_records() {
    let (code, out, _) = run(&mut twistscope(&[
        "--no-cache", "--format", "records", "scan", "x^5-x", "x^5+4x", "--pmax", "20", "--depth", "full",
    ]));
    assert_eq!(code, 0);
    assert!(out.starts_with("twistscope-records\tv1\n"));
    assert!(out.contains("rec\t3\tgood\t0\t0\t1,0,-2,0,9\t1,0,2,0,9\tnone\n"), "{out}");
    assert!(out.contains("rec\t17\tgood\t-12\t12\t1,12,70,204,289\t1,-12,70,-204,289\tminus\n"), "{out}");
    assert!(out.contains("agg\tnone_fraction\t3/7\tfinite-range\n"), "{out}");
}

#[test]
fn char_search_refutes_at_17() {
    let (code, out, _) = run(&mut twistscope(&[
        "--no-cache", "char-search", "x^9+x", "x^9+16x", "--support", "-1,2", "--pmax", "30",
    ]));
    assert_eq!(code, 0);
    for d in ["1", "-1", "2", "-2"] {
        assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == [d, "refuted", "at", "17"]), "{out}");
    }
}

#[test]
fn split_table_has_no_violations() {
    let (code, out, _) = run(&mut twistscope(&["--no-cache", "split", "--pmax", "1000"]));
    assert_eq!(code, 0);
    assert!(out.contains("i 37  ii 130  iii 0  violation 0  ramified 0"), "{out}");
}

#[test]
fn lemma62_records() {
    let (code, out, _) =
        run(&mut twistscope(&["--no-cache", "--format", "records", "lemma62", "--pmax", "5"]));
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "twistscope-lemma62\tv1\nlemma62\t3\t1\t18\tok\nlemma62\t3\t16\t18\tok\n\
         lemma62\t5\t1\t50\tok\nlemma62\t5\t16\t50\tok\n"
    );
}

#[test]
fn small_budget_exits_3() {
    let (code, out, _) = run(&mut twistscope(&["--no-cache", "--budget", "1000", "verify-paper"]));
    assert_eq!(code, 3, "{out}");
    for id in [1, 2, 7, 8] {
        assert!(out.contains(&format!("[PASS] criterion {id:>2}")), "{out}");
    }
    assert!(out.contains("[BUDGET] criterion  3"), "{out}");
    assert!(!out.contains("[FAIL]"), "{out}");
}

#[test]
fn stats_on_saved_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&mut twistscope(&[
        "--no-cache", "--format", "records", "scan", "x^5-x", "x^5+4x", "--pmax", "40", "--depth", "full",
    ]));
    assert_eq!(code, 0);
    let path = dir.path().join("scan.tsv");
    std::fs::write(&path, out).unwrap();
    let (code, out, err) =
        run(&mut twistscope(&["--format", "records", "stats", path.to_str().unwrap(), "--moment", "2,0;0,1"]));
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("twistscope-stats\tv1\n"), "{out}");

    std::fs::write(&path, "not a report\n").unwrap();
    let (code, _, _) = run(&mut twistscope(&["stats", path.to_str().unwrap()]));
    assert_eq!(code, 2);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["--format", "records", "scan", "x^5-x", "x^5+4x", "--pmax", "30", "--depth", "full"];
    let mut flagged = vec!["--cache-dir", cache.to_str().unwrap()];
    flagged.extend(args);

    let cold = run(&mut twistscope(&flagged));
    assert_eq!(cold.0, 0);
    let files = cache_files(&cache);
    assert!(files > 0);
    let warm = run(&mut twistscope(&flagged));
    assert_eq!(warm, cold);
    assert_eq!(cache_files(&cache), files);

    let mut uncached = vec!["--no-cache"];
    uncached.extend(args);
    assert_eq!(run(&mut twistscope(&uncached)).1, cold.1);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let from_env = dir.path().join("env");
    let from_flag = dir.path().join("flag");
    let args = ["lpoly", "x^5-x", "--pmax", "11"];

    let (code, _, _) = run(twistscope(&args).env(CACHE_ENV, &from_env));
    assert_eq!(code, 0);
    assert!(cache_files(&from_env) > 0);

    let mut flagged = vec!["--cache-dir", from_flag.to_str().unwrap()];
    flagged.extend(args);
    let (code, _, _) = run(twistscope(&flagged).env(CACHE_ENV, &from_env));
    assert_eq!(code, 0);
    assert!(cache_files(&from_flag) > 0);
}
