use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mespin-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn mespin(args: &[&str], dir: &Path, config: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mespin"));
    cmd.args(args)
        .arg("--out")
        .arg(dir.join("out"))
        .env_remove("MESPIN_SEED");
    if let Some(json) = config {
        let path = dir.join("config.json");
        std::fs::write(&path, json).unwrap();
        cmd.arg("--config").arg(path);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn port_conflict_is_reported_as_a_failed_check() {
    let dir = scratch("conflict");
    let o = mespin(
        &["dualport-demo"],
        &dir,
        Some(r#"{"dual_port": {"accesses": [{"write_row": 2, "read_row": 2}]}}"#),
    );
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("[FAIL]"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = scratch("unknown");
    let o = mespin(
        &["trajectory"],
        &dir,
        Some(r#"{"magnet": {"ms": 1e6, "spin_hall": 1}}"#),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("spin_hall"));
    assert!(!dir.join("out").exists());
}

#[test]
fn mismatched_experiment_name_is_rejected() {
    let dir = scratch("name");
    let o = mespin(
        &["tmr-sweep"],
        &dir,
        Some(r#"{"experiment": "switchprob"}"#),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn too_few_trials_are_rejected() {
    let dir = scratch("trials");
    let o = mespin(&["switchprob", "--trials", "10"], &dir, None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tmr_sweep_writes_the_documented_columns() {
    let dir = scratch("tmr");
    let o = mespin(&["tmr-sweep"], &dir, None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.join("out/tmr_sweep.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "t_mgo_nm,w_over_l,r_p_ohm,r_ap_ohm,tmr_device,tmr_bitcell"
    );
    assert_eq!(csv.lines().count(), 1 + 7 * 4);
}

#[test]
fn seed_flag_overrides_environment_and_config() {
    let dir = scratch("seed");
    let config = Some(r#"{"seed": 11, "sim": {"duration": 0.2e-9}}"#);
    let o = mespin(&["trajectory", "--seed", "5"], &dir, config);
    assert!(stdout(&o).contains("seed=5"));
    let o = mespin(&["trajectory"], &dir, config);
    assert!(stdout(&o).contains("seed=11"));

    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mespin"));
    let o = cmd
        .args(["trajectory", "--out"])
        .arg(dir.join("env"))
        .env("MESPIN_SEED", "9")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed=9"));
}

#[test]
fn memory_report_passes_its_energy_checks() {
    let dir = scratch("report");
    let o = mespin(&["memory-report"], &dir, None);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("[FAIL]"));
    assert!(dir.join("out/memory_report.txt").exists());
}
