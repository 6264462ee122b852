use std::path::Path;
use std::process::{Command, Output};

fn mv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mv")).args(args).env_remove("MV_CACHE").output().unwrap()
}

fn mv_cached(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mv"))
        .args(args)
        .arg("--stats")
        .env("MV_CACHE", cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `(hits, misses)` from the `--stats` line.
fn stats(o: &Output) -> (u64, u64) {
    let err = String::from_utf8_lossy(&o.stderr);
    let line = err.lines().find(|l| l.starts_with("cache:")).expect("stats line");
    let nums: Vec<u64> = line.split(|c: char| !c.is_ascii_digit()).filter_map(|s| s.parse().ok()).collect();
    (nums[1], nums[2])
}

#[test]
fn volume_text() {
    let out = mv(&["--no-cache", "volume", "3", "--digits", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("v   = 1/40 · π^4 ≈ 2.435227"), "{text}");
    assert!(text.contains("Vol = 1/120 · π^4"), "{text}");
}

#[test]
fn simple_zero_in_the_cli() {
    let a = mv(&["--no-cache", "--format", "json", "volume", "3"]);
    let b = mv(&["--no-cache", "--format", "json", "volume", "--profile", "3,1"]);
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(va["v"], vb["v"]);
    assert_eq!(vb["profile"], serde_json::json!([1, 3]));
    assert_eq!(vb["genus"], 2);
}

#[test]
fn non_admissible_volume_is_zero_with_a_warning() {
    let out = mv(&["--no-cache", "--format", "json", "volume", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["v"]["rational"], "0/1");
    assert!(v["genus"].is_null());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not admissible"));
}

#[test]
fn exit_codes() {
    assert_eq!(mv(&["--no-cache", "volume", "3,x"]).status.code(), Some(2));
    assert_eq!(mv(&["--no-cache", "volume", "0"]).status.code(), Some(2));
    assert_eq!(mv(&["--no-cache", "frobnicate"]).status.code(), Some(2));
    assert_eq!(mv(&["--no-cache", "fit", "--g-range", "9"]).status.code(), Some(2));
    // a single family cannot separate g from n
    assert_eq!(mv(&["--no-cache", "fit", "--families", "1", "--digits", "20"]).status.code(), Some(3));
}

#[test]
fn minimal_table() {
    let text = stdout(&mv(&["--no-cache", "minimal", "--gmax", "3", "--digits", "7"]));
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[0], ["1", "1/24", "3.289868"]);
    assert_eq!(rows[1], ["2", "3/640", "2.435227"]);
    assert_eq!(rows[2], ["3", "1525/580608", "2.693486"]);
    let csv = stdout(&mv(&["--no-cache", "minimal", "--gmax", "2", "--format", "csv", "--digits", "5"]));
    assert_eq!(csv, "g,a,pi_power,v_rational,v_decimal\n1,1/24,2,1/3,3.2899\n2,3/640,4,1/40,2.4352\n");
}

#[test]
fn coeffs_output() {
    let text = stdout(&mv(&["--no-cache", "coeffs", "--order", "2", "--digits", "10"]));
    assert!(text.contains("c_{0,1} = -2/3 · π^2"), "{text}");
    assert!(text.contains("c_{0,2} = 1/18 · π^4"), "{text}");
    let json = stdout(&mv(&["--no-cache", "coeffs", "-r", "2", "--format", "json"]));
    let table: mv_core::expansion::ExpansionTable = serde_json::from_str(&json).unwrap();
    assert_eq!(table.order, 2);
    assert_eq!(table.to_json() + "\n", json);
    let csv = stdout(&mv(&["--no-cache", "coeffs", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn fit_json_round_trip() {
    let out = mv(&["--no-cache", "fit", "--format", "json", "--digits", "30", "--g-range", "15:30"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["cross_validation"].as_array().unwrap().len(), 6);
    assert!(v["cross_validation"].as_array().unwrap().iter().all(|c| c["agrees"] == true));
    let parsed: serde_json::Value = serde_json::from_str(&serde_json::to_string_pretty(&v).unwrap()).unwrap();
    assert_eq!(parsed, v);
}

#[test]
fn diagnose_lists_the_hand_values() {
    let text = stdout(&mv(&["--no-cache", "diagnose", "--profile", "3,3", "--g-range", "10:20"]));
    for line in ["A_1 = 1525/580608", "A_2 = 1/2560", "A_3 = 1/13824"] {
        assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
    }
    let json = stdout(&mv(&["--no-cache", "diagnose", "--profile", "3,3", "--g-range", "10:20", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let split: mv_core::volumes::DiagnosticSplit = serde_json::from_value(v["split"].clone()).unwrap();
    assert_eq!(split.by_m[&2], mv_core::exactnum::rat(1, 2560));
}

#[test]
fn verify_is_deterministic_under_a_seed() {
    let a = mv(&["--no-cache", "verify", "--seed", "11", "--format", "json"]);
    let b = mv(&["--no-cache", "verify", "--seed", "11", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let checks: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(checks.as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("nested/memo.mvcache");
    for args in [&["volume", "5,5,7"][..], &["diagnose", "--profile", "3,3,5", "--g-range", "10:16"], &["fit", "--digits", "20"]] {
        let cold = mv_cached(&cache, args);
        let warm = mv_cached(&cache, args);
        assert!(cold.status.success() && warm.status.success());
        assert_eq!(cold.stdout, warm.stdout, "{args:?}");
        let ((_, cold_misses), (warm_hits, warm_misses)) = (stats(&cold), stats(&warm));
        assert!(cold_misses > 0 && warm_misses == 0 && warm_hits > 0, "{args:?}");
    }
    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.starts_with("MVCACHE v1\n"));
}

#[test]
fn corrupt_cache_is_a_computation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.mvcache");
    std::fs::write(&cache, "MVCACHE v1\na 3 1/2\na 1 1/24\n").unwrap();
    assert_eq!(mv_cached(&cache, &["volume", "3"]).status.code(), Some(3));
}
