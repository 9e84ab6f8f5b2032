//! End-to-end runs of the `qetsim` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qetsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qetsim")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SWEEP: &str = r#"command = "snr-sweep"

[sweep]
model = "snr-normalized"

[[sweep.axes]]
param = "n_units"
min = 1.0
max = 1e4
n_points = 5
scale = "log10"
"#;

#[test]
fn list_recipes_names_every_figure() {
    let o = qetsim(&["list-recipes"]);
    assert!(o.status.success());
    let out = String::from_utf8_lossy(&o.stdout);
    for name in [
        "fig2", "fig3", "fig5", "fig6", "fig8", "fig9", "fig10", "fig11", "fig13",
    ] {
        assert!(
            out.lines().any(|l| l.split_whitespace().next() == Some(name)),
            "{name} missing:\n{out}"
        );
    }
}

#[test]
fn sweep_writes_data_and_sidecar() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "run.toml", SWEEP);
    let out = tmp.path().join("out");
    let o = qetsim(&[
        "snr-sweep",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--format",
        "csv,gnuplot",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("snr_sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.starts_with("n_units [1],snr_normalized [1]"));
    assert!(out.join("snr_sweep.dat").exists());
    assert!(out.join("snr_sweep.gp").exists());
    assert!(!out.join("snr_sweep.json").exists());
    let meta = fs::read_to_string(out.join("snr_sweep.meta.toml")).unwrap();
    assert!(meta.contains("[metadata]"));
    assert!(meta.contains("defaulted"));
}

#[test]
fn unknown_key_exits_2_and_names_it() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "bad.toml",
        &SWEEP.replace("model =", "finnesse = 3.0\nmodel ="),
    );
    let o = qetsim(&["snr-sweep", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sweep.finnesse"), "{}", stderr(&o));
}

#[test]
fn invalid_value_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "bad.toml",
        &format!("{SWEEP}\n[sweep.fixed]\nfinesse = -1.0\n"),
    );
    let o = qetsim(&["snr-sweep", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("finesse"), "{}", stderr(&o));
}

#[test]
fn overflowing_sweep_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let text = r#"command = "snr-sweep"

[sweep]
model = "snr-parametric"

[sweep.fixed]
squeeze = 700.0

[[sweep.axes]]
param = "n_units"
min = 1.0
max = 1e300
n_points = 3
scale = "log10"
"#;
    let cfg = write(tmp.path(), "hot.toml", text);
    let o = qetsim(&["snr-sweep", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("n_units="), "{}", stderr(&o));
}

#[test]
fn missing_config_exits_4() {
    let o = qetsim(&["snr-sweep", "--config", "/nonexistent/run.toml"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn command_mismatch_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "run.toml", SWEEP);
    let o = qetsim(&["qix-sim", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("command"), "{}", stderr(&o));
}

#[test]
fn unknown_recipe_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let o = qetsim(&["recipe", "fig99", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fig2"), "{}", stderr(&o));
}

#[test]
fn sidecar_reruns_to_identical_output() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    let cfg = write(tmp.path(), "run.toml", SWEEP);
    assert!(qetsim(&["snr-sweep", "--config", &cfg, "--out", a.to_str().unwrap()])
        .status
        .success());
    let sidecar = a.join("snr_sweep.meta.toml").display().to_string();
    let o = qetsim(&["snr-sweep", "--config", &sidecar, "--out", b.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        fs::read(a.join("snr_sweep.csv")).unwrap(),
        fs::read(b.join("snr_sweep.csv")).unwrap()
    );
}
