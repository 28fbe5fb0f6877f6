use std::path::Path;
use std::process::{Command, Output};

use fracspec::spectrum::SpectralSolution;
use fracspec_cli::modes::wavefunction_file_name;
use fracspec_cli::Format;

fn fracspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracspec"))
        .args(args)
        .env_remove("FRACSPEC_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn branch_file() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data/table2_branches.txt")
        .display()
        .to_string()
}

#[test]
fn table1_rows() {
    let o = fracspec(&["--mode", "table1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,A,B,tau");
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[1], "0.7000,0.02000,-1.265e-5,1.701");
    assert_eq!(lines[3], "0.8000,0.2000,-4.000e-5,1.236");
    assert_eq!(lines[7], "1.000,20.00,-4.000e-4,1.000");
}

#[test]
fn table2_with_branch_file() {
    let bf = branch_file();
    let o = fracspec(&[
        "--mode",
        "table2",
        "--branch-file",
        &bf,
        "--dim",
        "3,5",
        "--alpha",
        "1,0.95",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "N,alpha,k_star,Q1,gamma_alpha,E_n1_eV,E_n2_eV,note"
    );
    assert!(
        lines[1].starts_with("3,1.000,4.328,-6.655,8.655,"),
        "{}",
        lines[1]
    );
    assert!(
        lines[4].starts_with("5,0.9500,5.681,-5.661,7.456,"),
        "{}",
        lines[4]
    );
}

#[test]
fn table2_marks_missing_roots_with_nan() {
    let o = fracspec(&[
        "--mode", "table2", "--alpha", "1", "--dim", "3", "--kmax", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("3,1.000,NaN,NaN,NaN,NaN,NaN,"), "{row}");
}

#[test]
fn spectrum_json_round_trips_bit_for_bit() {
    let o = fracspec(&[
        "--mode", "spectrum", "--format", "json", "--dim", "3,4", "--alpha", "0.9,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let sols: Vec<SpectralSolution> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(sols.len(), 8);
    for s in &sols {
        let again: SpectralSolution =
            serde_json::from_str(&serde_json::to_string(s).unwrap()).unwrap();
        for (a, b) in [
            (s.k_star, again.k_star),
            (s.energy, again.energy),
            (s.epsilon_alpha, again.epsilon_alpha),
            (s.gamma_alpha, again.gamma_alpha),
            (s.nu_product, again.nu_product),
        ] {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
    let value: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&String> = value[0].as_object().unwrap().keys().collect();
    assert!(keys.iter().any(|k| *k == "epsilon_alpha"));
}

#[test]
fn spectrum_csv_data_precision_recovers_json_values() {
    let args = ["--mode", "spectrum", "--dim", "3", "--alpha", "0.8"];
    let csv = stdout(&fracspec(&args));
    let json = fracspec(&[&args[..], &["--format", "json"]].concat());
    let sols: Vec<SpectralSolution> = serde_json::from_slice(&json.stdout).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(
        row[9].parse::<f64>().unwrap().to_bits(),
        sols[0].energy.to_bits()
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["--mode", "spectrum", "--alpha", "0.7,0.8,0.9,1"];
    let a = fracspec(&args);
    let b = fracspec(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn wavefunction_writes_one_file_per_tuple() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("wf");
    let o = fracspec(&[
        "--mode",
        "wavefunction",
        "--dim",
        "3",
        "--alpha",
        "1,0.9",
        "--n",
        "1,2",
        "--points",
        "50",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    for alpha in [1.0, 0.9] {
        for n in [1, 2] {
            let p = out.join(wavefunction_file_name(3, alpha, n, Format::Csv));
            let text = std::fs::read_to_string(&p).unwrap();
            assert_eq!(text.lines().next(), Some("r,R"));
            assert_eq!(text.lines().count(), 51);
        }
    }
    let text =
        std::fs::read_to_string(out.join(wavefunction_file_name(3, 1.0, 1, Format::Csv))).unwrap();
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let changes = values
        .windows(2)
        .filter(|w| (w[0] < 0.0) != (w[1] < 0.0))
        .count();
    assert_eq!(changes, 1);
}

#[test]
fn potential_has_minimum_near_r0() {
    let o = fracspec(&["--mode", "potential", "--alpha", "0.7,1", "--points", "481"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    for alpha in [0.7, 1.0] {
        let (r, v) = rows
            .iter()
            .filter(|f| f[0] == alpha)
            .map(|f| (f[1], f[2]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((r - 1e5).abs() <= 1e3, "{alpha}: {r}");
        assert!((v + 2e-9).abs() < 1e-12, "{alpha}: {v}");
    }
}

#[test]
fn config_file_env_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "mode = table1\nalpha = 0.8, 0.9\nformat = json\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fracspec"))
        .env("FRACSPEC_CONFIG", &cfg)
        .args(["--alpha", "1"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["alpha"], 1.0);
    assert_eq!(v[0]["tau"], 1.0);
}

#[test]
fn exit_codes() {
    assert_eq!(fracspec(&["--mode", "nonsense"]).status.code(), Some(2));
    assert_eq!(fracspec(&["--alpha", "1.5"]).status.code(), Some(2));
    assert_eq!(fracspec(&["--delta", "0.2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "mode = table1\nwhat = 3\n").unwrap();
    let o = fracspec(&["--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));
    let o = fracspec(&[
        "--mode", "spectrum", "--alpha", "1", "--dim", "3", "--kmax", "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_passes_and_detects_tau_fault() {
    let o = fracspec(&["--mode", "verify", "--format", "json"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let residual = reports
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .find(|c| {
            c["name"]
                .as_str()
                .unwrap()
                .starts_with("radial equation, Kratzer")
        })
        .unwrap();
    assert!(residual["measured"].as_f64().unwrap() < 1e-5);

    let o = fracspec(&["--mode", "verify", "--tau-scale", "1.01"]);
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    let tau_fail = text
        .lines()
        .filter(|l| l.contains(",tau[alpha=") && l.contains(",false,false,"))
        .count();
    assert_eq!(tau_fail, 6);
}
