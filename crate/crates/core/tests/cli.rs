use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_guesswork");

fn write_dist(dir: &Path, name: &str, probs: &[f64]) -> PathBuf {
    let path = dir.join(name);
    let json = serde_json::json!({ "alphabet": ["a", "b", "c"], "probs": probs });
    fs::write(&path, json.to_string()).unwrap();
    path
}

struct Fixture {
    dir: TempDir,
    mu: PathBuf,
    nu: PathBuf,
}

fn fixture() -> Fixture {
    let dir = TempDir::new().unwrap();
    let mu = write_dist(dir.path(), "mu.json", &[0.05, 0.1, 0.85]);
    let nu = write_dist(dir.path(), "nu.json", &[0.3, 0.2, 0.5]);
    Fixture { dir, mu, nu }
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn significant_digits(x: &str) -> usize {
    let mantissa = x.split('e').next().unwrap();
    mantissa
        .chars()
        .filter(|c| c.is_ascii_digit())
        .collect::<String>()
        .trim_start_matches('0')
        .len()
}

#[test]
fn rate_grid_rows_and_format() {
    let f = fixture();
    let out = f.dir.path().join("rate.csv");
    let o = run(&[
        "rate",
        "--mu",
        s(&f.mu),
        "--nu",
        s(&f.nu),
        "--t-grid",
        "0.05:1.09:101",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("t,alpha,J"));
    let rows = rows(&out);
    assert_eq!(rows.len(), 101);
    for row in &rows {
        for field in row {
            assert!(significant_digits(field) <= 15, "{field}");
        }
    }
}

#[test]
fn matched_file_is_identical_with_or_without_nu() {
    let f = fixture();
    let a = f.dir.path().join("a.csv");
    let b = f.dir.path().join("b.csv");
    assert!(run(&["rate", "--mu", s(&f.mu), "--out", s(&a)])
        .status
        .success());
    assert!(
        run(&["rate", "--mu", s(&f.mu), "--nu", s(&f.mu), "--out", s(&b)])
            .status
            .success()
    );
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn hypothesis_violation_exits_3() {
    let f = fixture();
    let bad = write_dist(f.dir.path(), "bad.json", &[0.1, 0.85, 0.05]);
    let o = run(&["rate", "--mu", s(&bad), "--nu", s(&f.nu)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("positive tilted family"));
}

#[test]
fn config_errors_exit_2() {
    let f = fixture();
    let o = run(&["oracle", "--mu", s(&f.mu), "--nu", s(&f.nu)]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["oracle", "--mu", s(&f.mu), "--nu", s(&f.nu), "--n-list"]);
    assert_eq!(o.status.code(), Some(2));

    let broken = f.dir.path().join("broken.json");
    fs::write(&broken, r#"{"alphabet": ["a","b"], "probs": [0.5, -0.5]}"#).unwrap();
    assert_eq!(run(&["rate", "--mu", s(&broken)]).status.code(), Some(2));

    let cfg = f.dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"mu": {"alphabet": ["a","b","c"], "probs": [0.05,0.1,0.85]}, "typo": 1}"#,
    )
    .unwrap();
    assert_eq!(run(&["rate", "--config", s(&cfg)]).status.code(), Some(2));
    assert_eq!(
        run(&["rate", "--mu", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["rate", "--mu", s(&f.mu), "--t-grid", "1:2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn oversized_oracle_exits_4() {
    let f = fixture();
    let o = run(&[
        "oracle",
        "--mu",
        s(&f.mu),
        "--nu",
        s(&f.nu),
        "--n-list",
        "100000",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn config_file_drives_a_run() {
    let f = fixture();
    let out = f.dir.path().join("m.csv");
    let cfg = f.dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"mu": {"alphabet": ["a","b","c"], "probs": [0.05,0.1,0.85]},
            "nu": {"alphabet": ["a","b","c"], "probs": [0.3,0.2,0.5]},
            "rho_grid": "0.5:2:4"}"#,
    )
    .unwrap();
    let o = run(&["moments", "--config", s(&cfg), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(rows(&out).len(), 4);
}

#[test]
fn reference_curve_preset() {
    let f = fixture();
    let dir = f.dir.path().join("fig3");
    let o = run(&["moments", "--paper-fig3", "--out", s(&dir)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let value = |file: &str, rho: f64| -> f64 {
        rows(&dir.join(file))
            .iter()
            .find(|r| (r[0].parse::<f64>().unwrap() - rho).abs() < 1e-9)
            .map(|r| r[1].parse().unwrap())
            .unwrap()
    };
    assert!((value("fig3_nu_eq_mu.csv", 0.1) - 0.552920880484997).abs() < 1e-3);
    assert!((value("fig3_nu_030_020_050.csv", 9.6) - 1.05184984738489).abs() < 1e-3);
    for (file, count) in [
        ("fig3_nu_eq_mu.csv", 20),
        ("fig3_nu_032_030_037.csv", 10),
        ("fig3_nu_030_020_050.csv", 20),
    ] {
        let rows = rows(&dir.join(file));
        assert_eq!(rows.len(), count, "{file}");
        let e: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
        assert!(e.windows(2).all(|w| w[1] >= w[0]), "{file}");
    }
}

#[test]
fn oracle_gaps_shrink_and_output_is_deterministic() {
    let f = fixture();
    let go = |tag: &str| {
        let out = f.dir.path().join(format!("oracle_{tag}.csv"));
        let mc = f.dir.path().join(format!("mc_{tag}.txt"));
        let table = f.dir.path().join(format!("table_{tag}.csv"));
        let o = run(&[
            "oracle",
            "--mu",
            s(&f.mu),
            "--nu",
            s(&f.nu),
            "--n-list",
            "50,100,200",
            "--seed",
            "9",
            "--samples",
            "500",
            "--mc-out",
            s(&mc),
            "--table-out",
            s(&table),
            "--out",
            s(&out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (out, mc, table)
    };
    let first = go("a");
    let second = go("b");
    for (a, b) in [
        (&first.0, &second.0),
        (&first.1, &second.1),
        (&first.2, &second.2),
    ] {
        assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
    }
    assert_eq!(fs::read_to_string(&first.1).unwrap().lines().count(), 500);
    let table_rows = rows(&first.2);
    assert_eq!(table_rows.len(), 201 * 202 / 2);

    let header = fs::read_to_string(&first.0).unwrap();
    assert_eq!(
        header.lines().next(),
        Some("n,quantity,value,asymptote,gap")
    );
    let gaps: Vec<f64> = rows(&first.0)
        .iter()
        .filter(|r| r[1] == "moment:rho=1")
        .map(|r| r[4].parse().unwrap())
        .collect();
    assert_eq!(gaps.len(), 3);
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{gaps:?}");
}

#[test]
fn matched_oracle_tracks_renyi() {
    let f = fixture();
    let out = f.dir.path().join("o.csv");
    let o = run(&[
        "oracle",
        "--mu",
        s(&f.mu),
        "--n-list",
        "25,50,100,200",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let moment: Vec<Vec<String>> = rows(&out)
        .into_iter()
        .filter(|r| r[1] == "moment:rho=1")
        .collect();
    let limit: f64 = moment[0][3].parse().unwrap();
    assert!((limit - 0.759322).abs() < 1e-6);
    let gaps: Vec<f64> = moment.iter().map(|r| r[4].parse().unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{gaps:?}");
}

#[test]
fn coding_reports() {
    let f = fixture();
    let report = |nu: &Path, extra: &[&str]| -> serde_json::Value {
        let mut args = vec!["coding", "--mu", s(&f.mu), "--nu", s(nu)];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        serde_json::from_slice(&o.stdout).unwrap()
    };
    let matched = report(&f.mu, &["--n-list", "10,20"]);
    assert_eq!(matched["penalty_one_to_one"].as_f64(), Some(0.0));
    assert_eq!(matched["penalty_prefix_free"].as_f64(), Some(0.0));
    assert_eq!(matched["finite"].as_array().unwrap().len(), 2);

    // μ² normalized is the tilt of μ at α = 2
    let sq: Vec<f64> = [0.05f64, 0.1, 0.85].iter().map(|p| p * p).collect();
    let tilted = write_dist(f.dir.path(), "tilted.json", &sq);
    let r = report(&tilted, &[]);
    assert!(r["penalty_one_to_one"].as_f64().unwrap().abs() < 1e-9);
    assert!(r["penalty_prefix_free"].as_f64().unwrap() > 0.0);

    let r = report(&f.nu, &[]);
    assert!(r["penalty_one_to_one"].as_f64().unwrap() < r["penalty_prefix_free"].as_f64().unwrap());
}

#[test]
fn project_reports_the_projection() {
    let f = fixture();
    let o = run(&["project", "--mu", s(&f.mu), "--nu", s(&f.nu)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["alpha"].as_f64().unwrap() - 3.228159).abs() < 1e-5);
    assert!((v["H_projection"].as_f64().unwrap() - 0.596708).abs() < 1e-5);
}
