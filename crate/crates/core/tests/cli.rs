use std::path::Path;
use std::process::{Command, Output};

fn catscatter(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catscatter"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn wigner_export_contains_origin() {
    let dir = tempfile::tempdir().unwrap();
    let o = catscatter(&["wigner", "--state", "odd-cat", "--sigma-perp", "2", "--r0", "2", "--grid", "128", "--out", "w.csv"], dir.path());
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("w.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,px,w"));
    let origin = lines
        .map(|l| l.split(',').map(|f| f.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .find(|v| v[0] == 0.0 && v[1] == 0.0)
        .expect("origin row");
    assert!((origin[2] + 0.1013211836).abs() < 1e-9);
    assert!(dir.path().join("w.csv.config.json").exists());
}

#[test]
fn wigner_full_mode_header() {
    let dir = tempfile::tempdir().unwrap();
    let o = catscatter(&["wigner", "--state", "even-cat", "--mode", "full", "--grid", "16"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("x,y,px,py,w\n"));
    assert_eq!(text.lines().count(), 1 + 17usize.pow(4));
}

#[test]
fn gaussian_scatter_is_flat_in_phi() {
    let dir = tempfile::tempdir().unwrap();
    let o = catscatter(&["scatter", "--state", "gaussian", "--sigma-perp", "2", "--pi", "10", "--wide", "--theta", "10", "--phi-grid", "16"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta_deg,phi_deg,dnu,dsigma,err_est,method"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 16);
    let ds: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    for r in &rows {
        assert_eq!(r[2], "");
        assert_eq!(r[5], "quadrature2d");
    }
    for d in &ds {
        assert!((d - ds[0]).abs() <= 1e-8 * ds[0]);
    }
}

#[test]
fn finite_target_reports_both_quantities() {
    let dir = tempfile::tempdir().unwrap();
    let o = catscatter(&["scatter", "--state", "even-cat", "--sigma-t", "20", "--ne", "3", "--format", "json"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &v["rows"][0];
    let (dnu, ds) = (row["dnu"].as_f64().unwrap(), row["dsigma"].as_f64().unwrap());
    let sigma_sq = 400.0 + 4.0;
    assert!((ds - 2.0 * std::f64::consts::PI * sigma_sq * dnu / 3.0).abs() < 1e-12 * ds);
    assert_eq!(row["method"], "closed_form");
}

#[test]
fn validate_passes_and_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let a = catscatter(&["validate"], dir.path());
    let b = catscatter(&["validate"], dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().any(|l| l.starts_with("PASS closed_vs_quad2d")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn config_sidecar_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = catscatter(
        &["sweep", "--state", "even-cat", "--axis", "r0", "--values", "2:6:5", "--theta", "5", "--metric", "minmax", "--out", "a.csv"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = catscatter(&["--config", "a.csv.config.json", "--out", "b.csv"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("axis_value,theta_deg,A,metric\n"));
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",minmax")));
}

#[test]
fn sweep_records_failing_points() {
    let dir = tempfile::tempdir().unwrap();
    let o = catscatter(&["sweep", "--state", "odd-cat", "--axis", "r0", "--values", "2,0,4", "--format", "json"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["A"].is_f64());
    assert!(rows[1]["A"].is_null());
    assert!(rows[1]["error"].is_string());
    assert!(rows[2]["phi_scan"].as_array().unwrap().len() == 2);
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["scatter", "--sigma-perp", "-2"][..],
        &["scatter", "--theta", "10:20"],
        &["scatter", "--state", "bogus"],
        &["scatter", "--wide", "--sigma-t", "3"],
        &["sweep", "--axis", "r0"],
        &["asymmetry", "--phi-grid", "4"],
        &["--config", "missing.json"],
    ] {
        let o = catscatter(args, dir.path());
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn energy_flag_sets_momentum() {
    let dir = tempfile::tempdir().unwrap();
    let o = catscatter(&["asymmetry", "--ev", "1.3605", "--out", "a.csv"], dir.path());
    assert!(o.status.success());
    let cfg: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.config.json")).unwrap()).unwrap();
    assert!((cfg["p_i"].as_f64().unwrap() - 10.0).abs() < 1e-3);
    assert_eq!(cfg["p_i"], cfg["p_f"]);
}
