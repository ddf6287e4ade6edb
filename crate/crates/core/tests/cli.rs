use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosmic-dirac"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_csv_has_header_and_one_row_per_level() {
    let cfg = config("example.cfg");
    let o = run(&["spectrum", "--config", &cfg, "--nrmax", "5", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n_r,gamma,alpha,epsilon,E_plus,E_minus,valid,reason");
    assert_eq!(lines.len(), 7);
    for (i, line) in lines[1..].iter().enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 8);
        assert_eq!(cells[0], i.to_string());
        let eps: f64 = cells[3].parse().unwrap();
        assert!(eps > 0.0);
    }
}

#[test]
fn spectrum_json_is_versioned() {
    let cfg = config("example.cfg");
    let o = run(&["spectrum", "--config", &cfg, "--json", "--nrmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["levels"].as_array().unwrap().len(), 3);
}

#[test]
fn key_value_and_json_configs_agree() {
    let a = run(&["spectrum", "--config", &config("example.cfg"), "--csv"]);
    let b = run(&["spectrum", "--config", &config("example.json"), "--csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn flags_override_the_config_file() {
    let cfg = config("example.cfg");
    let base = run(&["spectrum", "--config", &cfg, "--csv"]);
    let moved = run(&["spectrum", "--config", &cfg, "--csv", "--rho", "0.5"]);
    let flags_only = run(&[
        "spectrum", "--csv", "--M", "1", "--omega", "4", "--rho", "0.8", "--s1", "0.7", "--s2", "0.1", "--m", "1",
        "--k", "0.3",
    ]);
    assert_ne!(base.stdout, moved.stdout);
    assert_eq!(base.stdout, flags_only.stdout);
}

#[test]
fn negative_values_are_accepted() {
    let o = run(&["clifford", "--rho", "0.8", "--r", "2", "--phi", "-1.2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["clifford_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn out_file_matches_stdout() {
    let cfg = config("example.cfg");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wave.csv");
    let to_stdout = run(&["wavefunction", "--config", &cfg, "--points", "50"]);
    let to_file = run(&[
        "wavefunction",
        "--config",
        &cfg,
        "--points",
        "50",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
    assert_eq!(stdout(&to_stdout).lines().count(), 51);
}

#[test]
fn coherent_modes_agree_and_full_spinor_has_eight_extra_columns() {
    let cfg = config("example.cfg");
    let closed = stdout(&run(&[
        "coherent", "--config", &cfg, "--xi", "0.3", "--points", "20", "--rmax", "10",
    ]));
    let series = stdout(&run(&[
        "coherent", "--config", &cfg, "--xi", "0.3", "--mode", "series", "--points", "20", "--rmax", "10",
    ]));
    for (a, b) in closed.lines().zip(series.lines()).skip(1) {
        let a: Vec<f64> = a.split(',').map(|c| c.parse().unwrap()).collect();
        let b: Vec<f64> = b.split(',').map(|c| c.parse().unwrap()).collect();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-10 * x.abs().max(1e-300), "{x} vs {y}");
        }
    }
    let full = stdout(&run(&["wavefunction", "--config", &cfg, "--points", "5", "--full"]));
    assert_eq!(full.lines().next().unwrap().split(',').count(), 13);
}

#[test]
fn exit_codes() {
    let cfg = config("example.cfg");
    assert_eq!(run(&["spectrum", "--config", &cfg, "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "M=1\nfoo=2\n").unwrap();
    let o = run(&["spectrum", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("foo"));

    let missing = dir.path().join("missing").join("x.csv");
    assert_eq!(
        run(&["wavefunction", "--config", &cfg, "--out", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["wavefunction", "--config", &cfg, "--k", "0"]).status.code(),
        Some(2)
    );

    // 256 points is too coarse for the su(1,1) grid tolerances
    let coarse = run(&["verify", "su11", "--config", &cfg, "--grid", "256"]);
    assert_eq!(coarse.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&coarse)).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn verify_without_model_runs_model_free_suites() {
    let o = run(&["verify", "clifford"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "specfun", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let id2 = text.lines().find(|l| l.contains("identity 2 printed")).unwrap();
    assert!(id2.ends_with("documented_divergence,true"), "{id2}");
    assert_eq!(run(&["verify", "su11"]).status.code(), Some(2));
}

#[test]
fn commands_are_byte_reproducible() {
    let cfg = config("example.cfg");
    for args in [
        vec!["spectrum", "--config", &cfg, "--json"],
        vec![
            "coherent", "--config", &cfg, "--xi", "0.5", "--mode", "series", "--points", "40",
        ],
        vec!["verify", "specfun"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
