use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use grassdense::{DimensionVector, Status};
use grassdense_cli::record::VerdictRecord;

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grassdense"))
        .args(args)
        .env("GRASSDENSE_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(&dir.path().join("verdicts.jsonl"), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn decide_sparse_length_four() {
    let o = run(&["decide", "1^2,2^2;3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("SPARSE ("), "{}", stdout(&o));
    assert!(stdout(&o).contains("sum 6 = 2n"));
}

#[test]
fn decide_dense_with_trace() {
    let o = run(&["decide", "1,4,5^3;6", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("DENSE ("));
    assert!(lines.len() >= 3, "{text}");
    assert!(lines[1].starts_with("Iff ") || lines[1].starts_with("DenseIf "));
    assert!(lines.last().unwrap().starts_with("  "));
}

#[test]
fn decide_force_runs_the_oracle() {
    let o = run(&["decide", "5,5,5,5,13;14", "--oracle", "force", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("monte-carlo"), "{text}");
    assert!(text.contains("stab_dim 6 > expected 2"), "{text}");
}

#[test]
fn unknown_without_oracle_exits_two() {
    let o = run(&["decide", "1,4,5^3;6", "--oracle", "off", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("UNKNOWN"));
}

#[test]
fn usage_errors_exit_three() {
    for args in [
        &["decide", "1,2;"][..],
        &["decide", "0,5;3"],
        &["bogus"],
        &["decide"],
        &["verify", "--max-n", "1"],
        &["family", "fibonacci", "--base", "1,2;2", "--depth", "2"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn help_exits_zero_and_lists_rules() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["SumDense", "L3", "L10", "Length4", "ExcessL1"] {
        assert!(text.contains(id), "{id} missing from help");
    }
    assert_eq!(run(&["decide", "--help"]).status.code(), Some(0));
}

#[test]
fn cache_hit_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("verdicts.jsonl");
    let args = ["decide", "1,4,5^3;6", "--json"];
    let cold = run_in(&cache, &args);
    assert!(cache.exists());
    let warm = run_in(&cache, &args);
    assert_eq!(cold.status.code(), warm.status.code());
    let a: VerdictRecord = serde_json::from_slice(&cold.stdout).unwrap();
    let b: VerdictRecord = serde_json::from_slice(&warm.stdout).unwrap();
    assert_eq!(a.untimed(), b.untimed());
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);

    // the complement shares the cache slot but not the record
    let other = run_in(&cache, &["decide", "1^3,2,5;6", "--json"]);
    let c: VerdictRecord = serde_json::from_slice(&other.stdout).unwrap();
    assert_eq!(c.vector, "1^3,2,5;6".parse::<DimensionVector>().unwrap());
}

#[test]
fn corrupt_cache_line_is_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("verdicts.jsonl");
    std::fs::write(&cache, "{not json\n").unwrap();
    let o = run_in(&cache, &["decide", "2,2,2;4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    let again = run_in(&cache, &["decide", "2,2,2;4"]);
    assert_eq!(stdout(&o), stdout(&again));
}

#[test]
fn no_cache_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("verdicts.jsonl");
    run_in(&cache, &["decide", "2,2,2;4", "--no-cache"]);
    assert!(!cache.exists());
}

#[test]
fn verify_small_sweep() {
    let t = Instant::now();
    let a = run(&["verify", "--max-n", "3"]);
    assert!(t.elapsed() < Duration::from_secs(1));
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("0 disagreements"), "{}", stdout(&a));
    let b = run(&["verify", "--max-n", "3"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn classify_size_two_matches_golden() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden/classify_size2.txt");
    let want = std::fs::read_to_string(golden).unwrap();
    let o = run(&["classify", "--size", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), want);
}

#[test]
fn classify_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = run(&["classify", "--size", "1", "--out", out.to_str().unwrap(), "--tail-only"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(json["size"], 1);
}

#[test]
fn fibonacci_family_is_dense() {
    let o = run(&["family", "fibonacci", "--base", "1,1,1;2", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|l| l.ends_with("\tCertifiedDense")), "{text}");
}

#[test]
fn enumerate_is_deterministic() {
    let a = run(&["enumerate", "--max-n", "3", "--max-len", "3", "--max-size", "2"]);
    let b = run(&["enumerate", "--max-n", "3", "--max-len", "3", "--max-size", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 12);

    let json = run(&["enumerate", "--max-n", "3", "--max-len", "3", "--max-size", "2", "--json"]);
    let vs: Vec<DimensionVector> = serde_json::from_slice(&json.stdout).unwrap();
    let text: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    assert_eq!(text.join("\n") + "\n", stdout(&a));
}

#[test]
fn decide_json_round_trips() {
    let o = run(&["decide", "1^2,2^2;3", "--json"]);
    let r: VerdictRecord = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.status, Status::Sparse);
    assert!(!r.trace.is_empty());
    let again: VerdictRecord = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, again);
}
