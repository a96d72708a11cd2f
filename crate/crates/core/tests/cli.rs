use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kepler-balance"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn kernel_for_the_candidate_has_tiny_defect() {
    let o = run(&[
        "kernel",
        "--profile",
        "phi_v_candidate:v=1",
        "--n",
        "2",
        "--c",
        "4",
        "--grid",
        "0.1:0.9:9",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["t", "F", "defect"]);
    assert_eq!(rows.len(), 9);
    for r in rows {
        assert!(r[2].abs() <= 1e-9, "defect {} at t = {}", r[2], r[0]);
    }
}

#[test]
fn kernel_of_constant_one() {
    let o = run(&["kernel", "--profile", "constant_one", "--n", "2", "--t", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    assert!((rows[0][1] - 20.0).abs() < 1e-10);
}

#[test]
fn configuration_errors_exit_1() {
    let empty = run(&["kernel", "--profile", "constant_one", "--grid", "0.1:0.9:0"]);
    assert_eq!(empty.status.code(), Some(1));
    assert!(!empty.stderr.is_empty());

    let outside = run(&["kernel", "--profile", "constant_one", "--grid", "0.5:1.5:3"]);
    assert_eq!(outside.status.code(), Some(1));

    let unknown = run(&["verify", "--only", "nonsense"]);
    assert_eq!(unknown.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ \"kind\": \"explicit_n\", ").unwrap();
    let corrupt = run(&["verify", "--only", "lerch", "--profile", path.to_str().unwrap()]);
    assert_eq!(corrupt.status.code(), Some(1));

    let bad_flag = run(&["kernel", "--no-such-flag"]);
    assert_eq!(bad_flag.status.code(), Some(1));
}

#[test]
fn poincare_summaries() {
    let o = run(&["poincare", "--c", "0", "--tmin", "1e-3"]);
    assert_eq!(o.status.code(), Some(0));
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(s["sup_error"].as_f64().unwrap() <= 1e-8);
    assert!(s["psi_residual_max"].as_f64().unwrap() <= 1e-10);

    let o = run(&["poincare", "--c", "-0.1"]);
    assert_eq!(o.status.code(), Some(3));
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let t0 = s["t0"].as_f64().unwrap();
    assert!(t0 > 0.0 && t0 < 1.0);

    let o = run(&["poincare", "--c", "1", "--tmin", "1e-4"]);
    assert_eq!(o.status.code(), Some(0));
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let exponent = s["exponent"].as_f64().unwrap();
    assert!((exponent - 0.858094329496552706).abs() < 1e-3);
}

#[test]
fn poincare_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.csv");
    let o = run(&["poincare", "--c", "0.5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(header, ["t", "f", "fp", "fpp", "psi_residual"]);
    assert!(rows.len() > 10);
    // decreasing t, increasing f away from the boundary
    for w in rows.windows(2) {
        assert!(w[1][0] < w[0][0] && w[1][1] > w[0][1]);
    }
}

#[test]
fn asymptotics_is_exact_for_rational_v() {
    let o = run(&["asymptotics", "--v", "9", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s["exact"], Value::Bool(true));
    let exact: Vec<&str> = s["A_exact"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(&exact[1..6], ["0", "-1/2", "-1/4", "-1/8", "-1/16"]);
}

#[test]
fn lerch_and_profile_eval_tables() {
    let o = run(&["lerch", "--s", "2", "--deriv", "1", "--grid", "0.1:0.9:5"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["t", "L", "direct", "boundary", "difference"]);
    for r in rows {
        assert!(r[4].abs() < 1e-8);
    }

    let o = run(&["profile-eval", "--profile", "sqrt_poincare", "--t", "0.25", "--t", "0.64"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["t", "f", "fp", "fpp", "density"]);
    assert!((rows[0][1] - 1.0).abs() < 1e-15);
    assert!((rows[1][4] - 1.0).abs() < 1e-12);
}

#[test]
fn verify_subset() {
    let o = run(&["verify", "--only", "lerch,boundary"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() == 2);
    assert!(text.contains("2/2 checks passed"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["kernel", "--profile", "explicit_n:n=2", "--c", "3", "--grid", "0.05:0.95:19"];
    let one = bin().args(args).env("KEPLER_BALANCE_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("KEPLER_BALANCE_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let again = bin().args(args).env("KEPLER_BALANCE_THREADS", "1").output().unwrap();
    assert_eq!(one.stdout, again.stdout);
}
