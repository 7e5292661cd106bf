use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn skyrelay(args: &[&str], out_env: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_skyrelay"));
    cmd.args(args).env_remove("SKYRELAY_OUT_DIR");
    if let Some(dir) = out_env {
        cmd.env("SKYRELAY_OUT_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn run_writes_series_summary_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cb");
    let o = skyrelay(
        &["run", "--preset", "cb", "--seeds", "0..2", "--steps", "60", "--out-dir", out.to_str().unwrap()],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    for name in ["timeseries_seed0.csv", "timeseries_seed1.csv", "summary.json", "scenario.toml"] {
        assert!(out.join(name).is_file(), "missing {name}");
    }
    let csv = fs::read_to_string(out.join("timeseries_seed0.csv")).unwrap();
    assert_eq!(csv.lines().count(), 61);
    assert_eq!(csv.lines().next(), Some("step,coverage,components,top1,top2,top3"));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["runs"].as_array().unwrap().len(), 2);
    assert_eq!(fs::read_dir(out.join("plots")).unwrap().count(), 4);
}

#[test]
fn same_seed_same_csv_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for tag in ["a", "b"] {
        let out = dir.path().join(tag);
        let o = skyrelay(
            &["run", "--preset", "rw", "--seeds", "4", "--steps", "80", "--no-plots", "-o", out.to_str().unwrap()],
            None,
        );
        assert!(o.status.success(), "{}", stderr(&o));
        files.push(fs::read(out.join("timeseries_seed4.csv")).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = skyrelay(&["sweep", "--preset", "cb", "--seeds", "1", "--steps", "30", "--no-plots"], Some(dir.path()));
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("cb").join("timeseries_seed0.csv").is_file());
}

#[test]
fn scenario_file_drives_run_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("small.toml");
    fs::write(&scenario, "preset = \"rw\"\nseed = 12\nsteps = 25\n[ground]\ncount = 40\n").unwrap();

    let o = skyrelay(&["validate", scenario.to_str().unwrap(), "--print"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let printed = String::from_utf8(o.stdout).unwrap();
    assert!(printed.contains("count = 40"), "{printed}");

    let out = dir.path().join("out");
    let o = skyrelay(
        &["run", "--scenario", scenario.to_str().unwrap(), "--no-plots", "-o", out.to_str().unwrap()],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("timeseries_seed12.csv")).unwrap();
    assert_eq!(csv.lines().count(), 26);
}

#[test]
fn plot_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("series.csv");
    fs::write(&csv, "step,coverage,components,top1,top2,top3\n0,100,1,100,0,0\n1,98,3,97,1,1\n").unwrap();
    let out = dir.path().join("plots");
    let o = skyrelay(&["plot", csv.to_str().unwrap(), "-o", out.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 4);
    assert!(fs::read_to_string(out.join("connectivity_timeline.svg")).unwrap().starts_with("<svg"));
}

#[test]
fn errors_carry_category_and_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[uav]\nrange = -1.0\n").unwrap();
    let o = skyrelay(&["validate", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[config]:"), "{}", stderr(&o));
    assert!(stderr(&o).contains("uav.range"));

    let o = skyrelay(&["validate", dir.path().join("missing.toml").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error[io]:"));

    let garbled = dir.path().join("garbled.csv");
    fs::write(&garbled, "step,coverage,components,top1,top2,top3\n0,x,1,1,0,0\n").unwrap();
    let o = skyrelay(&["plot", garbled.to_str().unwrap(), "-o", dir.path().to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("error[format]:"));

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "step,coverage,components,top1,top2,top3\n").unwrap();
    let o = skyrelay(&["plot", empty.to_str().unwrap(), "-o", dir.path().join("p").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(5));
    assert!(!dir.path().join("p").exists());

    let o = skyrelay(&["run", "--preset", "cb", "--steps", "0", "-o", dir.path().to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
}
