//! End-to-end tests of the `evosim` binary: exit codes, output formats, the
//! resolved-config round trip, and the seed environment default.

use std::process::{Command, Output};

fn evosim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_evosim"))
}

fn run(args: &[&str]) -> Output {
    evosim().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// First stderr line starting with `{` is the resolved config.
fn config_line(out: &Output) -> String {
    stderr(out)
        .lines()
        .find(|l| l.starts_with('{'))
        .expect("resolved config echoed")
        .to_string()
}

#[test]
fn run_emits_csv_rows_and_summary() {
    let out = run(&[
        "run",
        "--algo",
        "sswm",
        "--fitness",
        "onemax",
        "--n",
        "16",
        "--beta",
        "1",
        "--nbeta",
        "auto",
        "--mutation",
        "global",
        "--trials",
        "4",
        "--budget",
        "100*n*ln(n)",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "trial_id,algo,fitness,n,d,beta,N,mutation,seed,generations,success,final_fitness,\
         lo_decrease_events,hit_trap"
    );
    assert_eq!(lines.count(), 4);
    let summary = stderr(&out)
        .lines()
        .filter(|l| l.starts_with('{'))
        .nth(1)
        .expect("summary JSON")
        .to_string();
    let parsed: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert!(parsed["summary"]["success_rate"].is_number());
}

#[test]
fn resolved_config_round_trips() {
    let args = [
        "run",
        "--algo",
        "sswm",
        "--fitness",
        "cliff",
        "--n",
        "12",
        "--d",
        "3",
        "--beta",
        "0.5",
        "--nbeta",
        "auto",
        "--mutation",
        "local",
        "--trials",
        "6",
        "--budget",
        "500*n",
        "--seed",
        "11",
    ];
    let first = run(&args);
    assert!(first.status.success());
    let config = config_line(&first);

    let dir = std::env::temp_dir().join(format!("evosim-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("resolved.json");
    std::fs::write(&config_path, &config).unwrap();

    let second = run(&["run", "--config", config_path.to_str().unwrap()]);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(config_line(&second), config);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn flags_override_config_file() {
    let dir = std::env::temp_dir().join(format!("evosim-override-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("base.json");
    std::fs::write(
        &config_path,
        r#"{"algo":"ea","fitness":"onemax","n":8,"mutation":"global","trials":2,"budget":"1000","seed":5}"#,
    )
    .unwrap();

    let base = run(&["run", "--config", config_path.to_str().unwrap()]);
    assert!(base.status.success());
    let overridden = run(&[
        "run",
        "--config",
        config_path.to_str().unwrap(),
        "--seed",
        "6",
        "--trials",
        "3",
    ]);
    assert!(overridden.status.success());
    assert_ne!(stdout(&base), stdout(&overridden));
    let config: serde_json::Value = serde_json::from_str(&config_line(&overridden)).unwrap();
    assert_eq!(config["seed"], 6);
    assert_eq!(config["trials"], 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn env_var_is_the_default_master_seed() {
    let base_args = [
        "run",
        "--algo",
        "ea",
        "--fitness",
        "onemax",
        "--n",
        "8",
        "--mutation",
        "global",
        "--trials",
        "2",
        "--budget",
        "1000",
    ];
    let with_env = evosim()
        .args(base_args)
        .env("EVOSIM_SEED", "99")
        .output()
        .unwrap();
    let with_flag = evosim()
        .args(base_args)
        .arg("--seed")
        .arg("99")
        .output()
        .unwrap();
    assert_eq!(stdout(&with_env), stdout(&with_flag));
    // Explicit flag wins over the environment.
    let flag_beats_env = evosim()
        .args(base_args)
        .arg("--seed")
        .arg("100")
        .env("EVOSIM_SEED", "99")
        .output()
        .unwrap();
    assert_ne!(stdout(&flag_beats_env), stdout(&with_env));
}

#[test]
fn usage_errors_exit_one_and_name_the_flag() {
    let unknown_fitness = run(&[
        "run",
        "--algo",
        "ea",
        "--fitness",
        "mount-everest",
        "--n",
        "8",
        "--mutation",
        "global",
        "--budget",
        "10",
    ]);
    assert_eq!(unknown_fitness.status.code(), Some(1));
    assert!(stderr(&unknown_fitness).contains("--fitness"));

    let bad_budget = run(&[
        "run",
        "--algo",
        "ea",
        "--fitness",
        "onemax",
        "--n",
        "8",
        "--mutation",
        "global",
        "--budget",
        "50**n",
    ]);
    assert_eq!(bad_budget.status.code(), Some(1));
    assert!(stderr(&bad_budget).contains("--budget"));

    let odd_balance = run(&[
        "run",
        "--algo",
        "ea",
        "--fitness",
        "balance",
        "--n",
        "9",
        "--mutation",
        "global",
        "--budget",
        "10",
    ]);
    assert_eq!(odd_balance.status.code(), Some(1));
    assert!(stderr(&odd_balance).contains("even"));

    let unknown_flag = run(&["run", "--frobnicate"]);
    assert_eq!(unknown_flag.status.code(), Some(1));
}

#[test]
fn strict_beta_rejects_large_beta() {
    let out = run(&[
        "run",
        "--algo",
        "sswm",
        "--fitness",
        "onemax",
        "--n",
        "8",
        "--beta",
        "1.5",
        "--nbeta",
        "4",
        "--mutation",
        "global",
        "--budget",
        "10",
        "--strict-beta",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--beta"));
    // Without the flag it runs, with a warning.
    let loose = run(&[
        "run",
        "--algo",
        "sswm",
        "--fitness",
        "onemax",
        "--n",
        "8",
        "--beta",
        "1.5",
        "--nbeta",
        "4",
        "--mutation",
        "global",
        "--budget",
        "10",
    ]);
    assert!(loose.status.success());
    assert!(stderr(&loose).contains("warning"));
}

#[test]
fn exact_matches_coupon_collector() {
    let out = run(&[
        "exact",
        "--fitness",
        "onemax",
        "--n",
        "3",
        "--algo",
        "ea",
        "--mutation",
        "local",
    ]);
    assert!(out.status.success());
    let table = stdout(&out);
    let mut lines = table.lines();
    assert_eq!(
        lines.next().unwrap(),
        "state,delta_plus,delta_minus,delta,self_loop,hitting_time"
    );
    let row0: Vec<&str> = lines.next().unwrap().split(',').collect();
    let t0: f64 = row0[5].parse().unwrap();
    assert!((t0 - 5.5).abs() < 1e-9);
}

#[test]
fn exact_cliff_peak_row_is_the_direct_jump_time() {
    // From the peak (7 ones at n=10, d=3) the EA only accepts the direct
    // 3-bit jump to the optimum, so t[7] = 1 / (C(3,3)·(1/n)³·(1−1/n)⁷).
    let out = run(&[
        "exact", "--fitness", "cliff", "--d", "3", "--n", "10", "--algo", "ea", "--mutation",
        "global",
    ]);
    assert!(out.status.success());
    let table = stdout(&out);
    let row7: Vec<&str> = table
        .lines()
        .find(|l| l.starts_with("7,"))
        .unwrap()
        .split(',')
        .collect();
    let t7: f64 = row7[5].parse().unwrap();
    let jump = 0.001 * 0.9f64.powi(7);
    assert!((t7 - 1.0 / jump).abs() < 1e-6 * t7, "t[7] = {t7}");
}

#[test]
fn exact_unreachable_optimum_is_a_runtime_error() {
    let out = run(&[
        "exact",
        "--fitness",
        "cliff",
        "--n",
        "10",
        "--d",
        "3",
        "--algo",
        "ea",
        "--mutation",
        "local",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("unreachable"));
}

#[test]
fn drift_reports_bounds_and_negative_drift() {
    let out = run(&[
        "drift",
        "--fitness",
        "onemax",
        "--n",
        "100",
        "--algo",
        "sswm",
        "--beta",
        "1",
        "--nbeta",
        "1.1512925464970228",
        "--mutation",
        "global",
        "--negative-drift",
        "1:4",
        "--epsilon",
        "1.0",
    ]);
    assert!(out.status.success());
    let err = stderr(&out);
    let report_line = err
        .lines()
        .filter(|l| l.starts_with('{'))
        .nth(1)
        .expect("drift report JSON");
    let report: serde_json::Value = serde_json::from_str(report_line).unwrap();
    assert_eq!(report["bounds"]["applicable"], true);
    assert_eq!(report["negative_drift"]["holds"], true);
    // Table includes the hitting-time column.
    assert!(stdout(&out).starts_with("state,delta_plus"));
}

#[test]
fn sweep_runs_from_a_config_file() {
    let dir = std::env::temp_dir().join(format!("evosim-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec_path = dir.join("sweep.json");
    std::fs::write(
        &spec_path,
        r#"{
            "fitness": "onemax",
            "n": [8, 16],
            "algo": ["sswm"],
            "mutation": ["global"],
            "beta": [0.5, 1.0, 2.0],
            "selection": {"nbeta": ["auto"]},
            "trials": 3,
            "budget": "200*n",
            "seed": 12
        }"#,
    )
    .unwrap();
    let trials_path = dir.join("trials.csv");
    let out = run(&[
        "sweep",
        "--config",
        spec_path.to_str().unwrap(),
        "--out",
        trials_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["cells"].as_array().unwrap().len(), 6);
    let csv = std::fs::read_to_string(&trials_path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 6 * 3);
    assert!(csv.starts_with("cell_index,trial_id,algo"));

    // Same sweep, explicit worker cap: identical output.
    let again = run(&[
        "sweep",
        "--config",
        spec_path.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert!(again.status.success());
    let summary_again: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(summary["cells"], summary_again["cells"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_selection_suite_exits_zero() {
    let out = run(&["verify", "--suite", "selection"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("selection-bounds"));
    assert!(stdout(&out).contains("PASS"));

    let bad = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(bad.status.code(), Some(1));
}
