use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_kerr-epr");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Column `name` of a CSV body as f64, skipping empty cells.
fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .filter_map(|l| {
            let cell = l.split(',').nth(idx).unwrap();
            (!cell.is_empty()).then(|| cell.parse().unwrap())
        })
        .collect()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("scenario.cfg");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn fig1_family_blows_up_toward_outer_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "mass = 1000\nspin_ratio = 0.8\ncharge_ratio = 0.2\nspeed = 0.5\n\
         r_scale = horizon\nr_min = 1.001\nr_max = 10\nr_count = 200\n",
    );
    let out = run(&["--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 201);
    let theta = column(&csv, "theta_printed");
    assert_eq!(theta.len(), 200);
    let near: Vec<f64> = theta
        .iter()
        .take_while(|t| **t < 0.0)
        .map(|t| t.abs())
        .collect();
    assert!(near.len() > 50);
    assert!(near.windows(2).all(|w| w[0] > w[1]));
    assert!(theta.iter().all(|t| t.abs() <= near[0]));
}

#[test]
fn minkowski_override_single_row() {
    let out = run(&[
        "--mass",
        "0",
        "--spin-ratio",
        "0",
        "--charge-ratio",
        "0",
        "--speed",
        "0.6",
        "--phi",
        "3.141592653589793",
        "--r-scale",
        "linear",
        "--r-min",
        "10",
        "--r-max",
        "10",
        "--r-count",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let z = 0.6_f64.atanh();
    let vt = column(&csv, "vartheta13");
    assert_eq!(vt.len(), 1);
    assert!((vt[0] / (z.cosh() * z.sinh() / 10.0) - 1.0).abs() < 1e-12);
    let corrected = column(&csv, "chsh_corrected")[0];
    assert!((corrected - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["--r-count", "0"]).status.code(), Some(2));
    assert_eq!(run(&["--speed", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["--outputs", "doran,chsh"]).status.code(), Some(2));
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(
        run(&["--config", "/nonexistent/scenario.cfg"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "mass 1000\n");
    let out = run(&["--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn physics_errors_exit_3() {
    let naked = run(&["--spin-ratio", "0.9", "--charge-ratio", "0.9"]);
    assert_eq!(naked.status.code(), Some(3));
    // Every point is a static particle: no flight to the observers.
    let frozen = run(&["--speed", "0", "--r-count", "3"]);
    assert_eq!(frozen.status.code(), Some(3));
    assert!(stdout(&frozen).contains("no_azimuthal_progress"));
}

#[test]
fn output_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("t{threads}.csv"));
        let p = path.to_str().unwrap();
        let out = run(&[
            "--speed",
            "0.3,0.5,0.7,0.9",
            "--r-count",
            "50",
            "--threads",
            threads,
            "--output",
            p,
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty(), "CSV went to the file, not stdout");
        assert!(!out.stderr.is_empty(), "progress goes to stderr");
        files.push(std::fs::read(path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let text = String::from_utf8(files.remove(0)).unwrap();
    assert!(!text.contains('\r'));
    assert!(!text.contains("NaN") && !text.contains("inf"));
    assert_eq!(text.lines().count(), 201);
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "speed = 0.3\nr_count = 5\noutputs = lambda\n");
    let csv = stdout(&run(&["--config", &cfg, "--speed", "0.9"]));
    assert_eq!(column(&csv, "v"), vec![0.9; 5]);
    assert_eq!(
        csv.lines().next().unwrap(),
        "r,r_over_rplus,v,lambda01,lambda13,vartheta13,error"
    );
}

#[test]
fn doran_scan_flags_both_horizons() {
    let (r_minus, r_plus) = (434.31457505076196_f64, 1565.685424949238_f64);
    let out = run(&[
        "--outputs",
        "doran",
        "--r-scale",
        "linear",
        "--r-min",
        &(0.5 * r_minus).to_string(),
        "--r-max",
        &(2.0 * r_plus).to_string(),
        "--r-count",
        "198",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 201);
    let r = column(&csv, "R");
    let singular = column(&csv, "singular");
    let flagged: Vec<f64> = r
        .iter()
        .zip(&singular)
        .filter(|(_, s)| **s == 1.0)
        .map(|(r, _)| *r)
        .collect();
    assert_eq!(flagged.len(), 2);
    assert!((flagged[0] / r_minus - 1.0).abs() < 1e-12);
    assert!((flagged[1] / r_plus - 1.0).abs() < 1e-12);
}

#[test]
fn flat_doran_scan() {
    let out = run(&[
        "--outputs",
        "doran",
        "--mass",
        "0",
        "--spin-ratio",
        "0",
        "--charge-ratio",
        "0",
        "--r-scale",
        "log",
        "--r-min",
        "1",
        "--r-max",
        "100",
        "--r-count",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    assert!(column(&csv, "singular").iter().all(|s| *s == 0.0));
    assert!(column(&csv, "b").iter().all(|b| *b == 0.0));
}
