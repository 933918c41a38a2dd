//! End-to-end checks of the `resolventlab` binary: every subcommand runs on
//! miniature parameters, table/record shapes follow the documented contract
//! (CSV with a header row, one JSON record per line with `inputs`,
//! `estimate`, `kind`, `witness_hash`, `grid`, `iterations`), the rep-count
//! cache honors `RESOLVENTLAB_CACHE_DIR`, and exit codes are 0/1/2 for
//! success, failed verdicts, and errors.

use std::path::Path;
use std::process::Output;

use serde_json::Value;
use tempfile::tempdir;

fn run_with_cache(cache: &Path, args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_resolventlab"))
        .env("RESOLVENTLAB_CACHE_DIR", cache)
        .args(args)
        .output()
        .expect("binary launches")
}

fn run(args: &[&str]) -> Output {
    let cache = tempdir().unwrap();
    run_with_cache(cache.path(), args)
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

/// CSV lines with any carriage returns stripped, header first.
fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    stdout_text(out)
        .lines()
        .map(|l| l.trim_end_matches('\r').split(',').map(str::to_owned).collect())
        .collect()
}

fn json_records(out: &Output) -> Vec<Value> {
    stdout_text(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("record line parses as JSON"))
        .collect()
}

fn assert_record_contract(rec: &Value) {
    for key in ["inputs", "estimate", "kind", "witness_hash", "grid", "iterations"] {
        assert!(rec.get(key).is_some(), "record missing `{key}`: {rec}");
    }
    let est = rec["estimate"].as_f64().expect("numeric estimate");
    assert!(est.is_finite() && est >= 0.0, "estimate {est} out of range");
}

#[test]
fn spectrum_lists_sorted_torus_levels() {
    let out = run(&["spectrum", "--manifold", "torus", "--lambda-max", "13"]);
    assert_ok(&out);
    let rows = csv_rows(&out);
    assert_eq!(rows[0], vec!["lambda", "multiplicity"]);
    assert_eq!(rows[1], vec!["0", "1"]);
    // Frequencies are 2π|k|: levels 2π√m for m = 1, 2, 3, 4 fit below 13,
    // with multiplicities r₃(m) = 6, 12, 8, 6.
    let expect = |m: f64, mult: u64| vec![(2.0 * std::f64::consts::PI * m.sqrt()).to_string(), mult.to_string()];
    assert_eq!(rows.len(), 6, "rows: {rows:?}");
    assert_eq!(rows[2], expect(1.0, 6));
    assert_eq!(rows[3], expect(2.0, 12));
    assert_eq!(rows[4], expect(3.0, 8));
    assert_eq!(rows[5], expect(4.0, 6));
    let lambdas: Vec<f64> = rows[1..].iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(lambdas.windows(2).all(|w| w[0] < w[1]), "levels not sorted");
}

#[test]
fn shells_honor_the_cache_dir_and_replay_identically() {
    let cache = tempdir().unwrap();
    let first = run_with_cache(cache.path(), &["shells", "--m-max", "50"]);
    assert_ok(&first);
    let rows = csv_rows(&first);
    assert_eq!(rows[0], vec!["m", "count"]);
    assert_eq!(rows.len(), 52, "header plus m = 0..=50");
    // Independently enumerated r₃ values.
    for (m, count) in [(0, 1), (1, 6), (2, 12), (3, 8), (7, 0), (25, 30), (48, 8), (50, 84)] {
        assert_eq!(rows[1 + m], vec![m.to_string(), count.to_string()], "r3({m})");
    }
    let cached = std::fs::read_dir(cache.path()).unwrap().count();
    assert!(cached >= 1, "cache dir stayed empty");
    let second = run_with_cache(cache.path(), &["shells", "--m-max", "50"]);
    assert_ok(&second);
    assert_eq!(first.stdout, second.stdout, "cache hit changed the table");
}

#[test]
fn multcheck_identity_errors_are_small() {
    let out = run(&["multcheck", "--lambda", "8", "--mu", "1.25", "--t", "0.4", "--level", "7"]);
    assert_ok(&out);
    let records = json_records(&out);
    assert_eq!(records.len(), 4);
    let mut names: Vec<&str> = records.iter().map(|r| r["identity"].as_str().unwrap()).collect();
    names.sort_unstable();
    assert_eq!(
        names,
        ["boundary-difference", "heaviside-transform", "partial-fractions", "pole-pair-transform"]
    );
    for rec in &records {
        let err = rec["abs_err"].as_f64().unwrap();
        assert!(err < 1e-6, "{} absolute error {err:.2e}", rec["identity"]);
    }
}

#[test]
fn projnorm_record_follows_the_contract() {
    let out = run(&["projnorm", "--degree", "2", "--p", "6.0"]);
    assert_ok(&out);
    let records = json_records(&out);
    assert_eq!(records.len(), 1);
    assert_record_contract(&records[0]);
    let hash = records[0]["witness_hash"].as_str().unwrap();
    assert_eq!(hash.len(), 64);
    assert!(hash.chars().all(|c| c.is_ascii_hexdigit()));
    assert!(records[0]["iterations"].as_u64().unwrap() >= 1);
    // Degree-2 zonal level on S³: the norm lands well inside (0.3, 0.65)
    // whether reported as the 2→6 norm (≈ 0.581) or its square (≈ 0.338).
    let est = records[0]["estimate"].as_f64().unwrap();
    assert!((0.3..0.65).contains(&est), "degree-2 estimate {est}");
}

#[test]
fn resolvent_record_on_the_torus() {
    let out = run(&["resolvent", "--manifold", "torus", "--lambda", "6", "--mu", "1", "--p", "4"]);
    assert_ok(&out);
    let records = json_records(&out);
    assert_eq!(records.len(), 1);
    assert_record_contract(&records[0]);
    assert!(records[0]["estimate"].as_f64().unwrap() > 0.0);
    assert!(!records[0]["kind"].as_str().unwrap().is_empty());
}

#[test]
fn necsuff_emits_window_resolvent_and_ratio() {
    let out = run(&[
        "necsuff",
        "--manifold",
        "sphere",
        "--lambda",
        "3.872983346207417",
        "--eps",
        "0.5",
        "--p",
        "6",
    ]);
    assert_ok(&out);
    let records = json_records(&out);
    assert_eq!(records.len(), 3, "window, resolvent, then the ratio record");
    assert_record_contract(&records[0]);
    assert_record_contract(&records[1]);
    assert_eq!(records[2]["kind"], "window_over_resolvent");
    assert!(records[2]["estimate"].as_f64().unwrap() > 0.0);
    assert!(records[2]["lhs"].as_f64().unwrap() > 0.0);
    assert!(records[2]["rhs"].as_f64().unwrap() > 0.0);
}

#[test]
fn quadruples_match_enumerated_counts() {
    let out = run(&["quadruples", "--q", "1", "--q", "2", "--q", "3"]);
    assert_ok(&out);
    let rows = csv_rows(&out);
    assert_eq!(rows[0], vec!["q", "points", "quadruples", "ratio"]);
    // Brute-force oracle: q = 1 has the 6 signed unit vectors and 90 additive
    // quadruples k₁+k₂ = k₃+k₄; q = 2 has 12 points / 540; q = 3 has 8 / 216.
    let expected = [(1u64, 6u64, 90u64), (2, 12, 540), (3, 8, 216)];
    for (row, (q, points, quads)) in rows[1..].iter().zip(expected) {
        assert_eq!(row[0], q.to_string());
        assert_eq!(row[1], points.to_string());
        assert_eq!(row[2], quads.to_string());
        let ratio: f64 = row[3].parse().unwrap();
        let check = quads as f64 / (points * points) as f64;
        assert!((ratio - check).abs() < 1e-12 * check);
    }
}

#[test]
fn kernel_sup_reports_diagonal_and_argmax() {
    let out = run(&["kernel-sup", "--lambda", "12"]);
    assert_ok(&out);
    let records = json_records(&out);
    assert_eq!(records.len(), 1);
    assert_record_contract(&records[0]);
    assert_eq!(records[0]["kind"], "grid_exact_kernel_sup");
    assert!(records[0]["diagonal"].as_f64().unwrap() > 0.0);
    assert_eq!(records[0]["argmax"].as_array().unwrap().len(), 3);
    assert!(records[0]["grid"]["n"].as_u64().unwrap() >= 2);
}

#[test]
fn expsum_record_is_internally_consistent() {
    let out = run(&["expsum", "--r", "20"]);
    assert_ok(&out);
    let records = json_records(&out);
    assert_eq!(records.len(), 1);
    let rec = &records[0];
    assert_record_contract(rec);
    assert_eq!(rec["kind"], "oscillatory_remainder_sum");
    let (re, im) = (rec["value_re"].as_f64().unwrap(), rec["value_im"].as_f64().unwrap());
    let est = rec["estimate"].as_f64().unwrap();
    assert!((est - re.hypot(im)).abs() <= 1e-12 * est.max(1.0));
    assert!(rec["abs_sum"].as_f64().unwrap() >= est - 1e-12);
    assert!(rec["iterations"].as_u64().unwrap() >= 1);
    // The default width is R^{−0.3}.
    let eps = rec["inputs"]["eps"].as_f64().unwrap();
    assert!((eps - 20f64.powf(-0.3)).abs() < 1e-15);
}

#[test]
fn fit_exit_code_tracks_the_verdict() {
    let dir = tempdir().unwrap();
    let csv = dir.path().join("points.csv");
    std::fs::write(
        &csv,
        "x,y\n2,2.8284271247461903\n4,8\n8,22.627416997969522\n16,64\n",
    )
    .unwrap();
    let csv = csv.to_str().unwrap();

    let pass = run(&["fit", "--csv", csv, "--x", "x", "--y", "y", "--predicted", "1.5"]);
    assert_ok(&pass);
    let rec = &json_records(&pass)[0];
    assert_eq!(rec["kind"], "scaling_fit");
    assert!((rec["estimate"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    assert_eq!(rec["fit"]["verdict"], true);

    let fail = run(&["fit", "--csv", csv, "--x", "x", "--y", "y", "--predicted", "0.9"]);
    assert_eq!(fail.status.code(), Some(1), "failed verdict must exit 1");
    assert_eq!(json_records(&fail)[0]["fit"]["verdict"], false);

    let err = run(&["fit", "--csv", csv, "--x", "nope", "--y", "y", "--predicted", "1.5"]);
    assert_eq!(err.status.code(), Some(2), "missing column must exit 2");
    assert!(String::from_utf8_lossy(&err.stderr).contains("error:"));
}

#[test]
fn run_noop_is_deterministic_and_writes_the_bundle() {
    let (out1, out2) = (tempdir().unwrap(), tempdir().unwrap());
    let first = run(&["--seed", "9", "--out", out1.path().to_str().unwrap(), "run", "noop"]);
    assert_ok(&first);
    assert!(stdout_text(&first).contains("all verdicts passed"));
    let bundle1 = std::fs::read(out1.path().join("noop.jsonl")).expect("bundle written");
    let second = run(&["--seed", "9", "--out", out2.path().to_str().unwrap(), "run", "noop"]);
    assert_ok(&second);
    let bundle2 = std::fs::read(out2.path().join("noop.jsonl")).unwrap();
    assert_eq!(bundle1, bundle2, "replay with the same seed must be byte-identical");
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn run_rejects_unknown_recipes() {
    let out = run(&["run", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:") && err.contains("nope"), "stderr: {err}");
}

#[test]
fn run_algebraic_identities_end_to_end() {
    let dir = tempdir().unwrap();
    let out = run(&["--seed", "3", "--out", dir.path().to_str().unwrap(), "run", "algebraic-identities"]);
    assert_ok(&out);
    let text = stdout_text(&out);
    assert!(text.contains("[PASS]"), "stdout: {text}");
    assert!(text.contains("all verdicts passed"));
    let bundle = std::fs::read_to_string(dir.path().join("algebraic-identities.jsonl")).unwrap();
    let mut lines = bundle.lines();
    let meta: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(meta["recipe"], "algebraic-identities");
    assert_eq!(meta["seed"], 3);
    let verdicts: Vec<Value> = lines
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|v| v.get("passed").is_some())
        .collect();
    assert!(!verdicts.is_empty());
    assert!(verdicts.iter().all(|v| v["passed"] == true));
}

#[test]
fn config_file_seed_flows_through() {
    use resolvent_lab::harness::ExperimentConfig;
    let dir = tempdir().unwrap();
    let mut config = ExperimentConfig::default();
    config.seed = 42;
    let path = dir.path().join("config.json");
    std::fs::write(&path, config.to_json()).unwrap();
    let out = run(&["--config", path.to_str().unwrap(), "run", "noop"]);
    assert_ok(&out);
    assert!(stdout_text(&out).contains("seed 42"), "stdout: {}", stdout_text(&out));
}

#[test]
fn density_counts_the_sphere_window() {
    let out = run(&[
        "density",
        "--manifold",
        "sphere",
        "--lambda",
        "2.8284271247461903",
        "--eps",
        "0.3",
    ]);
    assert_ok(&out);
    let rows = csv_rows(&out);
    assert_eq!(rows[0], vec!["lambda", "eps", "count", "proxy"]);
    assert_eq!(rows.len(), 2);
    // Only the degree-2 level √8 sits within ±0.3, with dimension (2+1)² = 9.
    assert_eq!(rows[1][2], "9");
}
