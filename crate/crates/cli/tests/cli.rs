//! End-to-end checks of the `rgg` binary: output shapes, exit codes, and
//! byte-level reproducibility.

use std::fs;
use std::process::{Command, Output};

fn rgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sample_p_zero_is_a_bare_header() {
    let out = rgg(&["sample", "--n", "5", "--p", "0", "--seed", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5 0\n");
}

#[test]
fn sample_round_trips_through_the_parser() {
    let out = rgg(&["sample", "--n", "9", "--p", "0.5", "--seed", "7", "--trial", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let g = rgg_core::edgelist::parse(&text).unwrap();
    assert_eq!(rgg_core::edgelist::write(&g), text);

    // identical invocation, identical bytes
    let again = rgg(&["sample", "--n", "9", "--p", "0.5", "--seed", "7", "--trial", "3"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn analyze_reports_the_square_in_c4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.edges");
    fs::write(&path, "4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();

    let out = rgg(&["analyze", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["empty_squares"], 1);
    assert_eq!(report["ordered_tuples"], 8);
    assert_eq!(report["separators"], serde_json::json!([]));
    assert_eq!(report["complement_disconnected"], true);
}

#[test]
fn classify_artin_on_c5() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.edges");
    fs::write(&path, "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();

    let out = rgg(&["classify", "--input", path.to_str().unwrap(), "--spec", "artin"]);
    assert!(out.status.success());
    let verdict: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(verdict["out_finite"], "yes");
    assert_eq!(verdict["is_finite"], "no");
    assert_eq!(verdict["weakly_relatively_hyperbolic"], true);

    let out = rgg(&["classify", "--input", path.to_str().unwrap(), "--spec", "coxeter"]);
    let verdict: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(verdict["hyperbolic"], "yes");
}

#[test]
fn moments_emits_every_quantity() {
    let out = rgg(&["moments", "--n", "4", "--p", "0.5"]);
    assert!(out.status.success());
    let m: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(m["expected_square_tuples"], 0.375);
    assert_eq!(m["expected_missing_edges"], 3.0);
    assert_eq!(m["square_second_moment"], 3.0);
    assert!(m["separating_upper_bound"].is_number());
    assert!(m["regime"]["pn"].is_number());
}

#[test]
fn oracle_check_passes_and_reports() {
    let out = rgg(&["oracle-check", "--n", "4", "--p", "0.5"]);
    assert!(out.status.success(), "exit: {:?}", out.status);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("formula,n,p,closed_form,oracle,abs_error,tolerance,pass")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert!(row.ends_with(",true"), "failing row: {row}");
    }
}

#[test]
fn sweep_is_byte_reproducible_and_validates_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.conf");
    fs::write(
        &path,
        "n_values = 20, 30\n\
         p_schedule = constant\n\
         p_param = 0.4\n\
         trials = 40\n\
         seed = 42\n\
         properties = has_empty_square, connected\n\
         statistics = missing_edges\n",
    )
    .unwrap();

    let first = rgg(&["sweep", "--config", path.to_str().unwrap()]);
    assert!(first.status.success());
    let second = rgg(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout, "sweep output must be byte-identical");

    let text = stdout(&first);
    assert!(text.starts_with("n,p,target,kind,trials,successes,estimate,ci_low,ci_high,closed_form,z_score\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 3);

    // config errors exit 2
    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "p_schedule = constant\n").unwrap();
    let out = rgg(&["sweep", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = rgg(&["sweep", "--config", "/no/such/file.conf"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = rgg(&["sample", "--n", "5", "--p", "2.0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rgg(&["sample", "--n", "5", "--p", "0.5", "--seed", "1", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rgg(&["classify", "--input", "/no/such/file", "--spec", "artin"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rgg(&["oracle-check", "--n", "9", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_json_format_carries_regime_stats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.conf");
    fs::write(
        &path,
        "n_values = 10\np_schedule = c_over_n\np_param = 2.0\ntrials = 5\nseed = 7\nproperties = connected\n",
    )
    .unwrap();
    let out = rgg(&["sweep", "--config", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &rows["rows"][0];
    assert_eq!(row["p"], 0.2);
    assert!(row["regime"]["transvection_margin"].is_number());
    assert_eq!(row["closed_form"], serde_json::Value::Null);
}
