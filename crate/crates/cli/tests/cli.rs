use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn philz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_philz")).args(args).output().expect("run philz")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn state_file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn field(report: &str, key: &str) -> String {
    let table: toml::Table = report.parse().unwrap();
    table[key].to_string()
}

fn float_field(report: &str, key: &str) -> f64 {
    field(report, key).parse().unwrap()
}

#[test]
fn report_equal_weight_state() {
    let dir = TempDir::new().unwrap();
    let f = state_file(dir.path(), "psi_s.json", r#"{"kind": "angular", "coefficients": [[0, 1, 0], [1, 1, 0]]}"#);
    let out = philz(&["report", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# units"));
    assert!((float_field(&text, "delta_lz") - 0.5).abs() < 1e-12);
    assert!((float_field(&text, "bound_exact") - 0.5).abs() < 1e-12);
    assert!((float_field(&text, "pi_delta_lz") - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert_eq!(field(&text, "holds_naive"), "true");
}

#[test]
fn report_eigenstate() {
    let dir = TempDir::new().unwrap();
    let f = state_file(dir.path(), "m3.json", r#"{"kind": "angular", "coefficients": [[3, 0, 1]]}"#);
    let out = philz(&["report", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(float_field(&text, "product"), 0.0);
    assert_eq!(field(&text, "holds_naive"), "false");
    assert_eq!(field(&text, "holds_exact"), "true");
}

#[test]
fn report_landau_three_term_state() {
    let dir = TempDir::new().unwrap();
    let f = state_file(
        dir.path(),
        "llv.json",
        r#"{"kind": "landau", "coefficients": [[0, 1, 0], [1, 1, 0], [2, 1, 0]]}"#,
    );
    let out = philz(&["report", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!((float_field(&text, "product") - 1.99).abs() < 0.01);
    assert!((float_field(&text, "bound_exact") - 0.844).abs() < 0.005);
}

#[test]
fn report_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = state_file(
        dir.path(),
        "mix.json",
        r#"{"kind": "angular", "coefficients": [[-2, 0.3, 0.1], [0, -0.2, 0.5], [4, 0.4, -0.6]]}"#,
    );
    let a = philz(&["report", f.to_str().unwrap()]);
    let b = philz(&["report", f.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let s1 = philz(&["sweep", "--n", "51"]);
    let s2 = philz(&["sweep", "--n", "51"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn report_exit_codes() {
    let dir = TempDir::new().unwrap();
    let broken = state_file(dir.path(), "broken.json", "{ not json");
    assert_eq!(philz(&["report", broken.to_str().unwrap()]).status.code(), Some(2));

    let zero = state_file(dir.path(), "zero.json", r#"{"kind": "angular", "coefficients": [[0, 0, 0]]}"#);
    assert_eq!(philz(&["report", zero.to_str().unwrap()]).status.code(), Some(3));

    let dup = state_file(dir.path(), "dup.json", r#"{"kind": "angular", "coefficients": [[1, 1, 0], [1, 0, 1]]}"#);
    assert_eq!(philz(&["report", dup.to_str().unwrap()]).status.code(), Some(3));

    let missing = dir.path().join("missing.json");
    assert_eq!(philz(&["report", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(philz(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_figure_csv() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("family.csv");
    let out = philz(&["sweep", "--min", "-1", "--max", "1", "--n", "401", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 402);
    assert_eq!(lines[0], "a,delta_phi_closed,delta_phi_engine,delta_lz,r_of_a,product,pi_delta_lz");

    let row = |a: &str| -> Vec<f64> {
        lines
            .iter()
            .find(|l| l.starts_with(a))
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect()
    };
    let centre = row("0.00000000000,");
    assert!((centre[1] - 1.8138).abs() < 1e-4);
    for line in &lines[1..] {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v.len(), 7);
        assert!((v[1] - v[2]).abs() < 1e-10);
    }
}

#[test]
fn sweep_rejects_bad_range() {
    assert_eq!(philz(&["sweep", "--min", "0.5", "--max", "-0.5"]).status.code(), Some(2));
    assert_eq!(philz(&["sweep", "--min", "-3"]).status.code(), Some(2));
}

#[test]
fn crossings_commands() {
    let out = philz(&["crossings", "product", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let roots: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(roots.len(), 4);
    for (r, q) in roots.iter().zip([-0.91, -0.41, 0.25, 0.97]) {
        assert!((r - q).abs() <= 0.01);
    }
    assert!(stdout(&out).lines().all(|l| l.split('.').nth(1).map(str::len) == Some(6)));

    let out = philz(&["crossings", "pi-dlz", "0.5"]);
    let roots: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(roots.len(), 4);
    assert!((roots[0] + roots[3]).abs() < 1e-6 && (roots[1] + roots[2]).abs() < 1e-6);

    let out = philz(&["crossings", "product", "2.0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());

    assert_eq!(philz(&["crossings", "width", "0.5"]).status.code(), Some(2));
}

#[test]
fn oracle_check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let psi_s = state_file(dir.path(), "psi_s.json", r#"{"kind": "angular", "coefficients": [[0, 1, 0], [1, 1, 0]]}"#);
    let out = philz(&["oracle-check", psi_s.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("result = pass"));

    let seven = state_file(
        dir.path(),
        "seven.json",
        r#"{"kind": "angular", "coefficients": [[-3, 0.2, -0.4], [-2, 0.7, 0.1], [-1, -0.3, 0.3],
            [0, 0.5, 0.0], [1, 0.1, 0.9], [2, -0.6, -0.2], [3, 0.4, 0.4]]}"#,
    );
    assert_eq!(philz(&["oracle-check", seven.to_str().unwrap()]).status.code(), Some(0));

    let landau = state_file(dir.path(), "ll.json", r#"{"kind": "landau", "coefficients": [[0, 1, 0], [3, 0, 1], [5, 1, 1]]}"#);
    assert_eq!(philz(&["oracle-check", landau.to_str().unwrap(), "--nodes", "64"]).status.code(), Some(0));

    let out = philz(&["oracle-check", psi_s.to_str().unwrap(), "--corrupt", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("result = fail"));

    let high = state_file(dir.path(), "high.json", r#"{"kind": "angular", "coefficients": [[0, 1, 0], [40, 1, 0]]}"#);
    assert_eq!(philz(&["oracle-check", high.to_str().unwrap(), "--nodes", "16"]).status.code(), Some(4));
}
