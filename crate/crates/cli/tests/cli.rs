// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::path::Path;
use std::process::{Command, Output};

use qwalk_core::mixing::classical_mixing_time;
use qwalk_core::{DecoherenceAxis, WalkParams};
use serde_json::Value;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qwalk_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = qwalk(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (header, rows) = csv(text);
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn assert_finite_csv(text: &str) {
    for line in text.lines().skip(1) {
        for cell in line.split(',') {
            if let Ok(v) = cell.parse::<f64>() {
                assert!(v.is_finite(), "{line}");
            }
        }
    }
    assert!(!text.contains("NaN") && !text.contains("inf"));
}

#[test]
fn depolarizing_dynamics() {
    let out = ok(&[
        "dynamics",
        "--depolarizing",
        "--gamma",
        "3",
        "--t-max",
        "5",
        "--dt",
        "0.05",
    ]);
    assert_eq!(csv(&out).0, ["t", "x", "y", "z"]);
    let (t, z) = (column(&out, "t"), column(&out, "z"));
    assert_eq!(t.len(), 101);
    for (t, z) in t.iter().zip(&z) {
        assert!((z - (-2.0 * t).exp() * (2.0 * t).cos()).abs() < 1e-12);
    }
    assert_finite_csv(&out);
}

#[test]
fn zero_length_trajectory() {
    let out = ok(&["dynamics", "--gamma", "0.7", "--t-max", "0"]);
    assert_eq!(out, "t,x,y,z\n0.0,0.0,0.0,1.0\n");
}

#[test]
fn bit_flip_dynamics() {
    let out = ok(&[
        "dynamics", "--axis", "1,0,0", "--gamma", "0.8", "--delta", "1.3", "--t-max", "4",
    ]);
    for (t, z) in column(&out, "t").iter().zip(column(&out, "z")) {
        assert!((z - (-0.8 * t).exp() * (2.6 * t).cos()).abs() < 1e-12);
    }
}

#[test]
fn phase_diagram_regions_and_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("phase.csv");
    let ratios = format!("0.5,3.4,{},{}", 15f64.sqrt(), 20f64.sqrt());
    ok(&[
        "phase-diagram",
        "--ratios",
        &ratios,
        "--rx-points",
        "401",
        "--out",
        grid.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&grid).unwrap();
    assert_finite_csv(&text);
    let (_, rows) = csv(&text);
    assert_eq!(rows.len(), 4 * 401);
    for row in &rows {
        let ratio: f64 = row[0].parse().unwrap();
        if ratio < 12f64.sqrt() {
            assert_eq!(row[2], "no_zeno");
        }
    }
    let zeno_at = |ratio: f64| {
        rows.iter()
            .filter(|r| r[0].parse::<f64>().unwrap() == ratio && r[2] == "zeno")
            .count()
    };
    assert!(zeno_at(15f64.sqrt()) > 0);
    assert!(zeno_at(20f64.sqrt()) > 0);

    let boundary = std::fs::read_to_string(dir.path().join("phase.boundary.csv")).unwrap();
    let (_, b) = csv(&boundary);
    let count = |ratio: f64| b.iter().filter(|r| r[0].parse::<f64>().unwrap() == ratio).count();
    assert_eq!(count(0.5), 0);
    assert_eq!(count(15f64.sqrt()), 4);
    assert_eq!(count(20f64.sqrt()), 2);
}

#[test]
fn phase_diagram_json() {
    let v = json(&ok(&[
        "phase-diagram",
        "--format",
        "json",
        "--ratios",
        "3.4641016151377544",
        "--rx-points",
        "3",
    ]));
    assert_eq!(v["grid"].as_array().unwrap().len(), 3);
    let b: Vec<f64> = v["boundaries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["r_x"].as_f64().unwrap())
        .collect();
    assert!(b.iter().all(|r| (r.abs() - 1.0 / 3.0).abs() < 1e-9));
}

#[test]
fn sphere_map_negation_symmetry() {
    let out = ok(&["sphere-map", "--gamma", "1", "--points", "64"]);
    assert_finite_csv(&out);
    let (header, rows) = csv(&out);
    assert_eq!(header, ["theta", "phi", "r_x", "r_y", "r_z", "mixing_time", "region"]);
    let p = WalkParams::new(1.0, 1.0).unwrap();
    for row in rows.iter().take(16) {
        let r: Vec<f64> = row[2..5].iter().map(|c| c.parse().unwrap()).collect();
        let time: f64 = row[5].parse().unwrap();
        for (sx, sy, sz) in [(-1.0, 1.0, 1.0), (1.0, -1.0, 1.0), (1.0, 1.0, -1.0)] {
            let flipped = DecoherenceAxis::new(sx * r[0], sy * r[1], sz * r[2]).unwrap();
            let t = classical_mixing_time(flipped.canonical(), &p, 1e-3)
                .unwrap()
                .time()
                .unwrap();
            assert_eq!(t, time);
        }
    }
}

#[test]
fn sphere_map_is_fastest_near_x_at_weak_decoherence() {
    let out = ok(&["sphere-map", "--gamma", "0.01", "--points", "10"]);
    let rx = column(&out, "r_x");
    let t = column(&out, "mixing_time");
    let fastest = (0..t.len()).min_by(|&a, &b| t[a].total_cmp(&t[b])).unwrap();
    let widest = (0..rx.len())
        .max_by(|&a, &b| rx[a].abs().total_cmp(&rx[b].abs()))
        .unwrap();
    assert_eq!(fastest, widest);
}

#[test]
fn sphere_map_rejects_tiny_grids() {
    assert_eq!(
        qwalk(&["sphere-map", "--gamma", "1", "--points", "9"]).status.code(),
        Some(2)
    );
}

#[test]
fn sphere_map_is_deterministic_across_worker_counts() {
    let a = ok(&["sphere-map", "--gamma", "2", "--points", "300", "--workers", "1"]);
    let b = ok(&["sphere-map", "--gamma", "2", "--points", "300", "--workers", "4"]);
    assert_eq!(a, b);
}

#[test]
fn gamma_sweep_interior_minimum() {
    let v = json(&ok(&["gamma-sweep", "--theta", "0", "--format", "json"]));
    let m = v["interior_argmin"]["gamma_over_delta"].as_f64().unwrap();
    assert!(m > 1.0 && m < 5.0, "{m}");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 161);
    for r in rows {
        let t = r["mixing_time"].as_f64().unwrap();
        assert!((r["log_mixing_time"].as_f64().unwrap() - t.ln()).abs() < 1e-12);
    }

    let phi = FRAC_PI_4.to_string();
    let theta = FRAC_PI_2.to_string();
    let v = json(&ok(&[
        "gamma-sweep",
        "--theta",
        &theta,
        "--phi",
        &phi,
        "--format",
        "json",
    ]));
    assert!(v["interior_argmin"].is_null());
}

#[test]
fn gamma_sweep_tail_decays_for_axes_near_x() {
    let theta = FRAC_PI_2.to_string();
    let out = ok(&[
        "gamma-sweep",
        "--theta",
        &theta,
        "--phi",
        "0.05",
        "--ratio-min",
        "10",
        "--ratio-max",
        "100",
        "--points",
        "10",
    ]);
    let t = column(&out, "mixing_time");
    assert!(t.windows(2).all(|w| w[1] < w[0]), "{t:?}");
}

#[test]
fn register_without_decoherence() {
    let v = json(&ok(&["register", "--gamma", "0", "--qubits", "1,5"]));
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["no_classical_mixing"], Value::Bool(true));
        assert!(r["register_mixing_time"].is_null());
        assert!((r["instantaneous_mixing_time"].as_f64().unwrap() - FRAC_PI_4).abs() < 1e-9);
    }
}

#[test]
fn single_qubit_register_matches_single_qubit_time() {
    let v = json(&ok(&[
        "register",
        "--gamma",
        "1.3",
        "--axis",
        "0.2,0.5,0.8",
        "--qubits",
        "1",
    ]));
    let r = &v["reports"][0];
    let reg = r["register_mixing_time"].as_f64().unwrap();
    let single = r["single_qubit_mixing_time"].as_f64().unwrap();
    assert!((reg - single).abs() <= 1e-9 * single);
}

#[test]
fn register_oracle_residuals() {
    let v = json(&ok(&[
        "register",
        "--gamma",
        "0.9",
        "--axis",
        "0.3,-0.4,0.5",
        "--qubits",
        "1,2,3",
        "--oracle",
    ]));
    for r in v["reports"].as_array().unwrap() {
        assert!(r["oracle"]["max_probability_residual"].as_f64().unwrap() < 1e-9);
        assert!(r["oracle"]["max_tv_residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn register_oracle_capacity() {
    let out = qwalk(&["register", "--gamma", "1", "--qubits", "2,4", "--oracle"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn register_batch_fit() {
    let v = json(&ok(&[
        "register",
        "--gamma",
        "1",
        "--qubits",
        "2,4,8,16,32,64",
        "--trace-points",
        "2",
    ]));
    let fit = &v["log_fit"];
    assert!(fit["slope"].as_f64().unwrap() > 0.0);
    let times: Vec<f64> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["register_mixing_time"].as_f64().unwrap())
        .collect();
    assert!(times.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn validate_passes_and_is_deterministic() {
    let a = ok(&["validate"]);
    let v = json(&a);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 5);
    assert_eq!(a, ok(&["validate"]));
}

#[test]
fn validate_fails_with_zero_tolerance() {
    let out = qwalk_env(&["validate"], "QWALK_VALIDATE_TOL_SCALE", "0");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["passed"], Value::Bool(false));
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["passed"], Value::Bool(false));
        assert!(c["residual"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# bit flip\ngamma = 2\naxis = 1,0,0\nt-max = 1\ndt = 0.5\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = ok(&["dynamics", "--config", cfg]);
    let z = column(&from_file, "z");
    assert_eq!(z.len(), 3);
    assert!((z[2] - (-2.0f64).exp() * 2f64.cos()).abs() < 1e-12);

    let overridden = ok(&["dynamics", "--config", cfg, "--gamma", "1"]);
    assert!((column(&overridden, "z")[2] - (-1.0f64).exp() * 2f64.cos()).abs() < 1e-12);

    std::fs::write(dir.path().join("bad.cfg"), "gamma = 1\ncolour = red\n").unwrap();
    let bad = dir.path().join("bad.cfg");
    assert_eq!(
        qwalk(&["dynamics", "--config", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn bad_input_exit_codes() {
    for args in [
        &["dynamics", "--gamma", "1", "--axis", "0,0,0"][..],
        &["dynamics", "--gamma", "-1"],
        &["dynamics", "--gamma", "1", "--dt", "0"],
        &["dynamics", "--gamma", "1", "--depolarizing", "--axis", "1,0,0"],
        &["dynamics", "--gamma", "1", "--theta", "4"],
        &["register", "--gamma", "1", "--qubits", "0"],
        &["register", "--gamma", "1", "--format", "csv"],
        &["gamma-sweep", "--ratio-min", "0"],
        &["nonsense"],
    ] {
        assert_eq!(qwalk(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = qwalk(&[
        "dynamics",
        "--gamma",
        "1",
        "--t-max",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(Path::new(&path).exists());
    assert_eq!(column(&std::fs::read_to_string(&path).unwrap(), "t").len(), 101);
}
