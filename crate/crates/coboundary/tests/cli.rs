//! Exit-code contract and document round trips through the binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_coboundary")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn")
}

fn write(path: &Path, contents: &str) {
    std::fs::write(path, contents).expect("write fixture");
}

#[test]
fn solve_then_verify_round_trip_exits_zero() {
    let dir = tempfile::tempdir().expect("tempdir");
    let inst = dir.path().join("step.json");
    write(
        &inst,
        r#"{"type":"step","breakpoints":["0/1","1/4","2/4","3/4","1/1"],
            "values":[["1/1","0/1"],["0/1","1/1"],["-1/1","0/1"],["0/1","-1/1"]]}"#,
    );
    let sol = dir.path().join("solution.json");
    let out = run(&[
        "solve",
        "--input",
        inst.to_str().unwrap(),
        "--norm",
        "linf",
        "--out",
        sol.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify", "--input", sol.to_str().unwrap(), "--kmax", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("report json");
    assert_eq!(report["residual_zero"], serde_json::Value::Bool(true));
    assert_eq!(report["within_twice_certified"], serde_json::Value::Bool(true));
    // The sweep is monotone nondecreasing.
    let sweep = report["sweep"].as_array().expect("sweep");
    let mut last = -1.0f64;
    for entry in sweep {
        let sup: f64 = entry["sup"]["approx"].as_str().unwrap().parse().unwrap();
        assert!(sup >= last - 1e-12, "sweep decreased");
        last = sup;
    }
}

#[test]
fn tampered_solution_fails_verification_with_exit_one() {
    let dir = tempfile::tempdir().expect("tempdir");
    let inst = dir.path().join("discrete.json");
    write(
        &inst,
        r#"{"type":"discrete","values":[["1/2"],["-1/4"],["-1/4"]]}"#,
    );
    let sol = dir.path().join("solution.json");
    let out = run(&[
        "solve",
        "--input",
        inst.to_str().unwrap(),
        "--out",
        sol.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // Perturb one value of g.
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&sol).unwrap()).unwrap();
    doc["g"][0][0] = serde_json::Value::String("7/3".into());
    write(&sol, &serde_json::to_string_pretty(&doc).unwrap());
    let out = run(&["verify", "--input", sol.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "tampered g must fail");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("report json");
    assert_eq!(report["residual_zero"], serde_json::Value::Bool(false));
}

#[test]
fn non_mean_zero_input_exits_two() {
    let dir = tempfile::tempdir().expect("tempdir");
    let inst = dir.path().join("bad.json");
    write(&inst, r#"{"type":"discrete","values":[["1/2"],["1/2"]]}"#);
    let out = run(&["solve", "--input", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let diag = String::from_utf8_lossy(&out.stderr);
    assert!(diag.contains("mean"), "diagnostic names the mean: {diag}");
}

#[test]
fn parse_failures_exit_three() {
    let dir = tempfile::tempdir().expect("tempdir");
    let inst = dir.path().join("broken.json");
    write(&inst, "{not json");
    let out = run(&["solve", "--input", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    // Unequal intervals cannot be lifted onto a cell model.
    write(
        &inst,
        r#"{"type":"step","breakpoints":["0/1","1/3","1/1"],"values":[["1/1"],["-1/2"]]}"#,
    );
    let out = run(&["solve", "--input", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    // Missing file.
    let out = run(&["solve", "--input", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_on_instance_reports_exact_optimum() {
    let dir = tempfile::tempdir().expect("tempdir");
    let inst = dir.path().join("pair.json");
    write(
        &inst,
        r#"{"type":"discrete","values":[["3/5","4/5"],["-3/5","-4/5"]]}"#,
    );
    let out = run(&["oracle", "--input", inst.to_str().unwrap(), "--norm", "l2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("report json");
    let first = &report["instances"][0];
    // ‖(3/5, 4/5)‖ = 1: the optimal prefix bound of an opposite pair.
    assert_eq!(first["optimal"]["value"], "1/1");
    assert_eq!(first["witness"], serde_json::json!([1, 2]));
}

#[test]
fn cantor_solve_with_explicit_levels() {
    let dir = tempfile::tempdir().expect("tempdir");
    let inst = dir.path().join("cantor.json");
    write(
        &inst,
        r#"{"type":"cantor","q":2,"r":"1/1","depth":1,
            "values":[["1/2"],["1/4"],["-1/2"],["-1/4"]]}"#,
    );
    for extra in [&["--levels", "0,1"][..], &["--depth", "1"][..], &[][..]] {
        let mut args = vec!["solve", "--input", inst.to_str().unwrap()];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "args {args:?}");
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("solution json");
        assert_eq!(doc["residual"]["value"], "0/1");
    }
}

#[test]
fn counterexample_rows_match_formula() {
    let out = run(&["counterexample", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let table: serde_json::Value = serde_json::from_slice(&out.stdout).expect("table json");
    let rows = table["rows"].as_array().expect("rows");
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["min_half_sum_norm_sq"], "1/2");
    assert_eq!(rows[1]["min_half_sum_norm_sq"], "1/1");
    assert_eq!(rows[2]["vertex_norm_sq"], "7/8");
    assert!(rows.iter().all(|r| r["exhaustive"] == serde_json::Value::Bool(true)));
}

#[test]
fn bundled_demo_instances_solve_cleanly() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("instances");
    for (name, extra) in [
        ("two_interval.json", &[][..]),
        ("discrete_plane.json", &[][..]),
        // Schedule 0,1,3 drives a 4-cell × 4-child permutation subproblem.
        ("kwapien_demo.json", &["--levels", "0,1,3"][..]),
    ] {
        let path = root.join(name);
        let mut args = vec!["solve", "--input", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{name} failed: {}", String::from_utf8_lossy(&out.stderr));
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("solution json");
        assert_eq!(doc["residual"]["value"], "0/1", "{name} residual");
    }
}

#[test]
fn diophantine_search_exhaustion_exits_one() {
    let out = run(&[
        "diophantine",
        "--x",
        "1/3",
        "--direction",
        "1/1",
        "--eps",
        "1/1000000000",
        "--qmax",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
