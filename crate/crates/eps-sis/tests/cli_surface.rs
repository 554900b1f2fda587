//! Exit codes, validation messages, output layout and reproducibility of
//! the command-line surface.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eps-sis"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn eps-sis")
}

const MODEL: &[&str] = &[
    "--model.lambda",
    "1.0",
    "--model.mu",
    "2.0",
    "--model.epsilon",
    "0.5",
];

fn with_model<'a>(extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = Vec::new();
    v.extend_from_slice(extra);
    v.extend_from_slice(MODEL);
    v
}

#[test]
fn missing_required_key_names_it_and_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &[
            "derived",
            "--model.lambda",
            "1.0",
            "--model.epsilon",
            "0.5",
            "--experiment.N",
            "100",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("model.mu"), "stderr: {err}");
}

#[test]
fn unknown_key_is_rejected_by_name() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = with_model(&["derived", "--experiment.N", "100"]);
    args.extend_from_slice(&["--experiment.bogus", "3"]);
    let out = run_in(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("experiment.bogus"));
}

#[test]
fn unknown_subcommand_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infeasible_workload_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = with_model(&["cutoff-scan", "--experiment.N_list", "200,400"]);
    args.extend_from_slice(&["--experiment.max_step_ops", "10"]);
    let out = run_in(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));
}

#[test]
fn invalid_domain_value_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = with_model(&["transient", "--experiment.N", "50"]);
    args.extend_from_slice(&["--experiment.x0", "10", "--experiment.t", "-1.0"]);
    let out = run_in(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derived_prints_constants_and_writes_expected_files_only() {
    let tmp = tempfile::tempdir().unwrap();
    let args = with_model(&["derived", "--experiment.N", "1000"]);
    let out = run_in(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    // Values frozen from extended-precision closed forms.
    assert!(stdout.contains("J = 2.0615528128088303"), "stdout: {stdout}");
    assert!(stdout.contains("x_star = 0.28077640640441515"));
    assert!(stdout.contains("t_N = 1.6753767441859613"));

    // Everything lands inside output.dir, nothing beside it.
    let entries: Vec<String> = std::fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(entries, vec!["out".to_string()], "created: {entries:?}");
    let mut files: Vec<String> = std::fs::read_dir(tmp.path().join("out"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    files.sort();
    assert_eq!(
        files,
        vec![
            "derived.csv".to_string(),
            "derived_resolved.conf".to_string(),
            "derived_summary.json".to_string(),
        ]
    );

    // The summary parses and echoes the resolved config.
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("out/derived_summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["config"]["model.lambda"], "1.0");
    assert_eq!(summary["config"]["output.dir"], "out");
    assert_eq!(summary["master_seed"], 0);
}

#[test]
fn config_file_with_flag_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("run.conf"),
        "master_seed = 5\n[model]\nlambda = 1.0\nmu = 2.0\nepsilon = 0.5\n\
         [experiment]\nN = 100\n[output]\ndir = from_file\n",
    )
    .unwrap();
    let out = run_in(
        tmp.path(),
        &[
            "derived",
            "--config",
            "run.conf",
            "--output.dir",
            "from_flag",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(tmp.path().join("from_flag/derived.csv").exists());
    assert!(!tmp.path().join("from_file").exists());
}

#[test]
fn resolved_config_reproduces_byte_identical_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = with_model(&[
        "coupling-tail",
        "--experiment.N",
        "60",
        "--experiment.xi_grid",
        "0.5,1.0,2.0",
        "--experiment.replications",
        "300",
    ]);
    args.extend_from_slice(&["--master_seed", "42", "--output.dir", "a"]);
    let first = run_in(tmp.path(), &args);
    assert_eq!(first.status.code(), Some(0));

    // Re-run purely from the echoed config, redirecting the output dir.
    let out = run_in(
        tmp.path(),
        &[
            "coupling-tail",
            "--config",
            "a/coupling-tail_resolved.conf",
            "--output.dir",
            "b",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let a = std::fs::read(tmp.path().join("a/coupling-tail.csv")).unwrap();
    let b = std::fs::read(tmp.path().join("b/coupling-tail.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn thread_count_does_not_change_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    for (dir, threads) in [("t1", "1"), ("t4", "4")] {
        let mut args = with_model(&[
            "concentration-scan",
            "--experiment.N_list",
            "50,100",
            "--experiment.replications",
            "120",
        ]);
        args.extend_from_slice(&["--master_seed", "9", "--threads", threads, "--output.dir", dir]);
        let out = run_in(tmp.path(), &args);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(tmp.path().join("t1/concentration-scan.csv")).unwrap();
    let b = std::fs::read(tmp.path().join("t4/concentration-scan.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn csv_only_format_skips_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = with_model(&["gap", "--experiment.N", "30"]);
    args.extend_from_slice(&["--output.format", "csv"]);
    let out = run_in(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    assert!(tmp.path().join("out/gap.csv").exists());
    assert!(!tmp.path().join("out/gap_summary.json").exists());
    assert!(tmp.path().join("out/gap_resolved.conf").exists());
}

#[test]
fn trajectory_dump_has_documented_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = with_model(&["simulate", "--experiment.N", "40"]);
    args.extend_from_slice(&[
        "--experiment.x0",
        "0",
        "--experiment.t_max",
        "1.0",
        "--experiment.replications",
        "2",
        "--master_seed",
        "3",
    ]);
    let out = run_in(tmp.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(tmp.path().join("out/simulate.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "replication,event_index,time,state");
    let first = lines.next().unwrap();
    assert!(first.starts_with("0,0,0"), "first row: {first}");
    // Times carry 17 significant digits.
    let time_field = first.split(',').nth(2).unwrap();
    assert!(time_field.contains('e'), "time field: {time_field}");
}
