use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rharmonic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_defaults_pass() {
    let out = run(&["verify", "--points", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("family        n=4 r=2"), "{text}");
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn impossible_tolerance_exits_one() {
    let out = run(&["verify", "--points", "5", "--tol", "0", "--space", "sphere", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["verify", "--a", "1+"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--seed-id", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--point", "1,2"]).status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# sphere run\nn = 3\nr = 3\nspace = sphere\npoints = 8\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["--config", cfg, "verify"]))).unwrap();
    assert_eq!(json["spec"]["n"], 3);
    assert_eq!(json["space"], "sphere");
    assert_eq!(json["points_used"], 8);

    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["--config", cfg, "verify", "--n", "2"]))).unwrap();
    assert_eq!(json["spec"]["n"], 2);
    assert_eq!(json["passed"], true);
}

#[test]
fn eval_reports_golden_values() {
    let out = run(&["eval", "--point", "2,0.5,0,0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,x1,x2,x3,re_f,im_f,re_tau1,im_tau1,re_tau2,im_tau2");
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    // τ(f) = −3(a − b t³) x₁ with a = b = 1
    assert!((row[6] - (-3.0 * (1.0 - 8.0) * 0.5)).abs() < 1e-12);
    assert!(row[8].abs() < 1e-10);
}

#[test]
fn grid_rows_and_empty_cells() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    let out = run(&["grid", "--n", "2", "--r", "1", "--grid", "-1:2:4,-1:1:3", "--out", path.to_str().unwrap()]);
    // t ≤ 0 cells are inadmissible
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 12);
    assert!(text.lines().nth(1).unwrap().ends_with(",,,"));
}

#[test]
fn seeds_lists_catalog() {
    let text = stdout(&run(&["seeds", "--n", "3"]));
    assert!(text.lines().any(|l| l.starts_with("re_zk:3") && l.ends_with("-3*x1*x2^2 + 1*x1^3")));
}
