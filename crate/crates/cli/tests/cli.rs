use std::process::{Command, Output};

use cube_cover::Report;

fn cube_cover(args: &[&str]) -> Output {
    cube_cover_env(args, None)
}

fn cube_cover_env(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cube-cover"));
    cmd.args(args).env_remove("CUBE_COVER_THREADS");
    if let Some(t) = threads {
        cmd.env("CUBE_COVER_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn involution_json_passes() {
    let o = cube_cover(&["verify-involution", "--n", "6", "--r", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["status"], "pass");
    assert_eq!(json["command"], "verify-involution");
    assert_eq!(json["timing_ms"], 0);
}

#[test]
fn min_degree_prints_the_value() {
    let o = cube_cover(&["min-degree", "--n", "3", "--r", "1", "--prime", "10007"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "d_min = 2"));
}

#[test]
fn parameter_errors_exit_2() {
    for args in [
        &["verify-sums", "--n-max", "1"][..],
        &["verify-involution", "--n", "4", "--r", "2"],
        &["verify-high-regime", "--n", "6", "--r", "1"],
        &["min-degree", "--n", "13", "--r", "1"],
        &["min-degree", "--n", "4", "--r", "2", "--prime", "9"],
        &["verify-recurrences", "--n", "6", "--a", "1", "--r-max", "3"],
        &["no-such-command"],
        &[],
    ] {
        let o = cube_cover(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn bad_thread_count_exits_2() {
    let o = cube_cover_env(&["verify-alt-sum", "--s-max", "3"], Some("many"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_json_is_stable() {
    let a = cube_cover(&["selftest", "--quick", "--json"]);
    let b = cube_cover(&["selftest", "--quick", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report = Report::from_json(&stdout(&a)).unwrap();
    assert_eq!(report.details.len(), 9);
}

#[test]
fn selftest_text_lists_every_criterion() {
    let o = cube_cover(&["selftest", "--quick"]);
    let text = stdout(&o);
    for k in 1..=9 {
        assert!(text.contains(&format!("criterion {k} (")), "{text}");
    }
    assert!(text.ends_with("summary: 9/9 criteria passed\n"));
}

#[test]
fn injected_fault_fails_at_the_involution_criterion() {
    let o = cube_cover(&["selftest", "--quick", "--json", "--inject-fault", "entry-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.details[0].status, cube_cover::Status::Fail);
    assert!(report.details[1..].iter().all(|d| d.status == cube_cover::Status::Pass));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for args in [
        &["selftest", "--quick", "--json"][..],
        &["min-degree", "--n-max", "5", "--json"],
        &["verify-recurrences", "--n-max", "12"],
    ] {
        let one = cube_cover_env(args, Some("1"));
        let four = cube_cover_env(args, Some("4"));
        let default = cube_cover_env(args, Some("0"));
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.stdout, default.stdout, "{args:?}");
    }
}

#[test]
fn json_round_trips() {
    for args in [
        &["verify-high-regime", "--n", "7", "--r", "4", "--json"][..],
        &["verify-recurrences", "--n", "12", "--a", "2", "--b", "1", "--w", "0", "--r-max", "4", "--json"],
        &["extremal", "--n", "5", "--r", "2", "--rational", "--json"],
    ] {
        let o = cube_cover(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let report = Report::from_json(&text).unwrap();
        assert_eq!(report.to_json() + "\n", text);
    }
}

#[test]
fn timing_is_opt_in() {
    let o = cube_cover(&["verify-alt-sum", "--s-max", "4", "--json", "--timing"]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.command, "verify-alt-sum");
}

#[test]
fn witness_file_feeds_the_alpha_command() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.poly");
    let report = dir.path().join("report.json");
    let o = cube_cover(&[
        "min-degree",
        "--n",
        "5",
        "--r",
        "2",
        "--witness",
        witness.to_str().unwrap(),
        "--json",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let saved = Report::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(saved.details[0].got, "3");

    // The witness vanishes above weight 2, so the coefficient relation
    // holds, but its degree is 3 = n - r, so alpha_J = 0 for |J| >= 3 fails.
    let o = cube_cover(&["alpha", "--poly", witness.to_str().unwrap(), "--r", "2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report = Report::from_json(&stdout(&o)).unwrap();
    let n = report.details.len();
    assert_eq!(report.details[n - 2].status, cube_cover::Status::Fail);
    assert_eq!(report.details[n - 1].status, cube_cover::Status::Pass);
    // With r = 1 the vanishing range starts at |J| = 4, beyond the degree.
    let o = cube_cover(&["alpha", "--poly", witness.to_str().unwrap(), "--r", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn extremal_polynomial_file_has_the_right_degree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.poly");
    let o = cube_cover(&["extremal", "--n", "6", "--r", "2", "--poly-out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let f: cube_cover::MultilinearPoly = std::fs::read_to_string(&path).unwrap().parse().unwrap();
    assert_eq!(f.degree(), cube_cover::Degree::Finite(4));
}

#[test]
fn malformed_polynomial_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.poly");
    std::fs::write(&path, "n=3 field=rational\n1 zz\n").unwrap();
    let o = cube_cover(&["alpha", "--poly", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
