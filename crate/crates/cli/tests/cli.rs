//! End-to-end tests of the `sbvp` binary: exit codes, output formats and the
//! round-trip guarantees of the emitted CSV/JSON.

use std::process::{Command, Output};

fn sbvp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbvp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn unknown_problem_exits_one_with_usage() {
    let out = sbvp(&["--problem", "does-not-exist"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown problem key"));
    assert!(err.contains("--help"));
}

#[test]
fn invalid_numeric_flag_exits_one() {
    let out = sbvp(&["--problem", "stellar", "--tol", "not-a-number"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_problem_exits_one() {
    let out = sbvp(&[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stellar_json_reports_small_linf() {
    let out = sbvp(&[
        "--problem",
        "stellar",
        "--method",
        "HeWNA",
        "--resolution",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["problem"], "stellar");
    assert_eq!(v["method"], "HeWNA");
    assert_eq!(v["resolution"], 8);
    assert_eq!(v["converged"], true);
    assert_eq!(v["grid"].as_array().unwrap().len(), 9);
    let linf = v["l_inf"].as_f64().unwrap();
    assert!(linf > 0.0 && linf <= 1e-7, "l_inf = {linf}");
    assert!(v["l2"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn thermal_default_run_matches_table_layout() {
    // all four methods at the benchmark resolutions: nine grid rows
    let out = sbvp(&["--problem", "thermal-explosion"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let data_rows: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_start().starts_with('0') || l.trim_start().starts_with("1."))
        .collect();
    assert_eq!(data_rows.len(), 9, "{text}");
    assert!(text.contains("HWQA@J=2"));
    assert!(text.contains("HeWNA@M=8"));
    // the t = 0 row carries the known values at 9 significant digits
    assert!(text.contains("0.316727578"), "{text}");
    assert!(text.contains("0.316694368"));
}

#[test]
fn robin_problem_reports_the_t1_row() {
    let out = sbvp(&["--problem", "human-head", "--method", "HeWNA"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_start().starts_with('0') || l.trim_start().starts_with("1."))
        .collect();
    assert_eq!(rows.len(), 10); // t = 0, eight midpoints, t = 1
}

#[test]
fn csv_round_trips_bit_identically() {
    let out = sbvp(&[
        "--problem",
        "stellar",
        "--method",
        "HeWNA,HWNA",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "grid_point,HeWNA@M=8,HWNA@J=2,exact,abs_err_HeWNA@M=8,abs_err_HWNA@J=2"
    );

    // recompute in-process and compare parsed CSV cells bit-for-bit
    let case = sbvp::benchmarks::make_stellar();
    let mut expected = Vec::new();
    for method in [sbvp::WaveletMethod::Hewna, sbvp::WaveletMethod::Hwna] {
        let basis = method.basis_spec(match method.family() {
            sbvp::BasisFamily::Haar => 2,
            sbvp::BasisFamily::Hermite => 8,
        });
        let cfg = sbvp::SolverConfig::new(method.method(), basis)
            .with_init(case.default_init.vector(basis.coefficient_count()));
        let r = sbvp::solve(&case.problem, &cfg).unwrap();
        let sys = sbvp::assemble(basis, case.problem.bc).unwrap();
        expected.push((sys, r));
    }
    let mut data_rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let Ok(t) = cells[0].parse::<f64>() else {
            continue; // L_inf / L2 summary rows
        };
        data_rows += 1;
        for (k, (sys, r)) in expected.iter().enumerate() {
            let parsed: f64 = cells[1 + k].parse().unwrap();
            let (y, _, _) = sys.reconstruct(&r.coefficients, t);
            assert_eq!(parsed.to_bits(), y.to_bits(), "t={t} col={k}");
        }
    }
    assert_eq!(data_rows, 9);
    assert!(text.lines().any(|l| l.starts_with("L_inf,")));
    assert!(text.lines().any(|l| l.starts_with("L2,")));
}

#[test]
fn json_round_trips_bit_identically() {
    let out = sbvp(&[
        "--problem",
        "thermal-explosion",
        "--method",
        "HWNA",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();

    let case = sbvp::benchmarks::make_thermal_explosion();
    let basis = sbvp::BasisSpec::haar(2);
    let cfg = sbvp::SolverConfig::new(sbvp::Method::Na, basis)
        .with_init(case.default_init.vector(basis.coefficient_count()));
    let r = sbvp::solve(&case.problem, &cfg).unwrap();
    let sys = sbvp::assemble(basis, case.problem.bc).unwrap();
    let grid = sbvp::reported_grid(&sys);
    for (k, t) in grid.iter().enumerate() {
        let got = v["values"][k].as_f64().unwrap();
        let (y, _, _) = sys.reconstruct(&r.coefficients, *t);
        assert_eq!(got.to_bits(), y.to_bits(), "index {k}");
    }
    assert_eq!(v["iterations"].as_u64().unwrap() as usize, r.iterations);
}

#[test]
fn non_convergence_exits_two_and_still_emits_the_table() {
    // the membrane nonlinearity is undefined at y = 0, so a zero initial
    // vector trips the guard
    let out = sbvp(&["--problem", "membrane", "--method", "HWNA", "--init", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("Grid point"), "table still emitted: {text}");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("warning"), "{err}");
}

#[test]
fn init_list_with_wrong_length_exits_one() {
    let out = sbvp(&["--problem", "stellar", "--method", "HeWNA", "--init", "0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_with_exact_solution_decreases_linf() {
    let out = sbvp(&[
        "--problem",
        "stellar",
        "--method",
        "HeWNA",
        "--resolution",
        "4,8",
        "--sweep",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "resolution,l_inf,l2,iterations,decreased");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    let l4: f64 = rows[0][1].parse().unwrap();
    let l8: f64 = rows[1][1].parse().unwrap();
    assert!(l8 < l4);
    assert_eq!(rows[0][4], "");
    assert_eq!(rows[1][4], "true");
}

#[test]
fn sweep_without_exact_uses_self_difference() {
    let out = sbvp(&[
        "--problem",
        "membrane",
        "--method",
        "HWNA",
        "--resolution",
        "1,2,3",
        "--sweep",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "resolution,self_diff,iterations,decreased");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][1], ""); // no predecessor to compare against
    let d2: f64 = rows[1][1].parse().unwrap();
    let d3: f64 = rows[2][1].parse().unwrap();
    assert!(d3 < d2, "self differences {d2} -> {d3}");
    assert_eq!(rows[2][3], "true");
}

#[test]
fn sweep_single_resolution_has_no_annotation() {
    let out = sbvp(&[
        "--problem",
        "stellar",
        "--method",
        "HeWNA",
        "--resolution",
        "8",
        "--sweep",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "resolution,l_inf,l2,iterations");
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn sweep_rejects_multiple_methods() {
    let out = sbvp(&["--problem", "stellar", "--method", "all", "--sweep"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("sbvp-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    let out = sbvp(&[
        "--problem",
        "stellar",
        "--method",
        "HeWNA",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&content).unwrap();
    assert_eq!(v["problem"], "stellar");
    std::fs::remove_dir_all(&dir).ok();
}
