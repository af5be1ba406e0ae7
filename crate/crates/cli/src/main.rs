//! Command-line front end: pick a problem, methods and resolutions, run the
//! solves and emit solution tables, error norms and convergence-sweep data.
//!
//! Exit codes: 0 when every solve converged, 1 for usage errors (unknown
//! problem key, invalid flags), 2 when any solve failed (tables are still
//! emitted, with a warning).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use sbvp::benchmarks::{self, BenchmarkCase, InitRule};
use sbvp::{
    assemble, error_norms, reported_grid, BasisFamily, BasisSpec, BcKind, CollocationSystem,
    SolveResult, SolverConfig, WaveletMethod,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "sbvp",
    version,
    about = "Wavelet collocation solvers for singular two-point boundary value problems",
    after_help = "Problem keys: arrhenius, arrhenius-n1-k2, arrhenius-n2-k1, arrhenius-n2-k2,\n\
                  arrhenius-n3-k1, arrhenius-n3-k2, stellar, thermal-explosion, membrane,\n\
                  human-head.\n\n\
                  Methods combine a basis (HW = Haar, HeW = Hermite) with a driver\n\
                  (QA = quasilinearization, NA = Newton). --resolution is the maximal\n\
                  level J for Haar methods and the basis size M for Hermite methods;\n\
                  when omitted, Haar methods use J=2 and Hermite methods M=8 so that all\n\
                  four methods share the benchmark grid."
)]
struct Cli {
    /// Problem key from the registry.
    #[arg(long)]
    problem: String,

    /// Comma-separated subset of {HWQA, HWNA, HeWQA, HeWNA}, or "all".
    #[arg(long, value_delimiter = ',', default_value = "all")]
    method: Vec<String>,

    /// Comma-separated resolutions (Haar: J; Hermite: M).
    #[arg(long, value_delimiter = ',')]
    resolution: Vec<u32>,

    /// Stopping threshold on the sup-norm of the iterate update.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,

    /// Iteration cap.
    #[arg(long, default_value_t = 50)]
    max_iter: usize,

    /// Initial nodal vector: a single constant or a comma-separated list
    /// matching the collocation-point count. Defaults to the problem's rule.
    #[arg(long)]
    init: Option<String>,

    /// Output format for solve tables.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Emit a convergence sweep (CSV) over --resolution for one method.
    #[arg(long)]
    sweep: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage problems (including bad numeric flags) exit with 1
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!("run `sbvp --help` for usage");
            ExitCode::from(1)
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Combo {
    method: WaveletMethod,
    resolution: u32,
}

impl Combo {
    fn basis(&self) -> BasisSpec {
        self.method.basis_spec(self.resolution)
    }

    fn label(&self) -> String {
        match self.method.family() {
            BasisFamily::Haar => format!("{}@J={}", self.method, self.resolution),
            BasisFamily::Hermite => format!("{}@M={}", self.method, self.resolution),
        }
    }
}

struct RunOutcome {
    combo: Combo,
    sys: CollocationSystem,
    result: SolveResult,
    grid: Vec<f64>,
    values: Vec<f64>,
    norms: Option<(f64, f64)>,
}

fn parse_methods(raw: &[String]) -> Result<Vec<WaveletMethod>, String> {
    let mut methods = Vec::new();
    for item in raw {
        if item.eq_ignore_ascii_case("all") {
            for m in WaveletMethod::ALL {
                if !methods.contains(&m) {
                    methods.push(m);
                }
            }
            continue;
        }
        let m = WaveletMethod::parse(item).ok_or_else(|| {
            format!("unknown method '{item}' (expected HWQA, HWNA, HeWQA, HeWNA or all)")
        })?;
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return Err("at least one method is required".into());
    }
    Ok(methods)
}

#[derive(Debug, Clone)]
enum InitSpec {
    Default,
    Const(f64),
    Vector(Vec<f64>),
}

fn parse_init(raw: Option<&str>) -> Result<InitSpec, String> {
    let Some(raw) = raw else {
        return Ok(InitSpec::Default);
    };
    if let Ok(v) = raw.parse::<f64>() {
        return Ok(InitSpec::Const(v));
    }
    let items: Result<Vec<f64>, _> = raw.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match items {
        Ok(v) if !v.is_empty() => Ok(InitSpec::Vector(v)),
        _ => Err(format!(
            "cannot parse --init '{raw}' as a constant or comma-separated list"
        )),
    }
}

fn initial_vector(spec: &InitSpec, rule: InitRule, n: usize) -> Result<Vec<f64>, String> {
    match spec {
        InitSpec::Default => Ok(rule.vector(n)),
        InitSpec::Const(v) => Ok(vec![*v; n]),
        InitSpec::Vector(v) => {
            if v.len() != n {
                Err(format!(
                    "--init list has {} entries but the basis has {n} collocation points",
                    v.len()
                ))
            } else {
                Ok(v.clone())
            }
        }
    }
}

fn run_combo(
    case: &BenchmarkCase,
    combo: Combo,
    cli: &Cli,
    init: &InitSpec,
) -> Result<RunOutcome, String> {
    let basis = combo.basis();
    // assemble first: it validates the basis spec
    let sys = assemble(basis, case.problem.bc).map_err(|e| format!("{}: {e}", combo.label()))?;
    let n = basis.coefficient_count();
    let init_vec = initial_vector(init, case.default_init, n)?;
    let cfg = SolverConfig::new(combo.method.method(), basis)
        .with_tol(cli.tol)
        .with_max_iter(cli.max_iter)
        .with_init(init_vec);
    let result = match combo.method.method() {
        sbvp::Method::Qa => sbvp::solver::solve_qa_with(&sys, &case.problem, &cfg),
        sbvp::Method::Na => sbvp::solver::solve_na_with(&sys, &case.problem, &cfg),
    }
    .map_err(|e| format!("{}: {e}", combo.label()))?;
    let grid = reported_grid(&sys);
    let values: Vec<f64> = grid
        .iter()
        .map(|&t| sys.reconstruct(&result.coefficients, t).0)
        .collect();
    let norms = case
        .problem
        .exact()
        .map(|exact| error_norms(&grid, &values, exact));
    Ok(RunOutcome {
        combo,
        sys,
        result,
        grid,
        values,
        norms,
    })
}

/// Plain-decimal formatting with 9 significant digits.
fn sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.8}");
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (8 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let case = benchmarks::by_key(&cli.problem).map_err(|e| e.to_string())?;
    let methods = parse_methods(&cli.method)?;
    let init = parse_init(cli.init.as_deref())?;

    if cli.sweep {
        return sweep(&cli, &case, &methods, &init);
    }

    let mut combos = Vec::new();
    for &method in &methods {
        if cli.resolution.is_empty() {
            let default = match method.family() {
                BasisFamily::Haar => 2,
                BasisFamily::Hermite => 8,
            };
            combos.push(Combo {
                method,
                resolution: default,
            });
        } else {
            for &resolution in &cli.resolution {
                combos.push(Combo { method, resolution });
            }
        }
    }

    let mut outcomes = Vec::new();
    for combo in combos {
        outcomes.push(run_combo(&case, combo, &cli, &init)?);
    }

    let output = match cli.format {
        Format::Table => render_table(&cli.problem, &case, &outcomes),
        Format::Csv => render_csv(&case, &outcomes),
        Format::Json => render_json(&cli.problem, &outcomes),
    };
    emit(&cli.out, &output)?;

    let all_converged = outcomes.iter().all(|o| o.result.converged);
    for o in outcomes.iter().filter(|o| !o.result.converged) {
        eprintln!(
            "warning: {} did not converge within {} iterations{}",
            o.combo.label(),
            o.result.iterations,
            o.result
                .diagnostic
                .as_deref()
                .map(|d| format!(" ({d})"))
                .unwrap_or_default()
        );
    }
    Ok(if all_converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

/// Shared report grid: t = 0, the finest run's collocation points, and t = 1
/// for Robin problems.
fn report_grid(case: &BenchmarkCase, outcomes: &[RunOutcome]) -> Vec<f64> {
    let finest = outcomes
        .iter()
        .max_by_key(|o| o.sys.len())
        .expect("at least one run");
    let mut grid = Vec::with_capacity(finest.sys.len() + 2);
    grid.push(0.0);
    grid.extend_from_slice(finest.sys.points());
    if case.problem.bc.kind == BcKind::NeumannRobin {
        grid.push(1.0);
    }
    grid
}

fn table_cells(case: &BenchmarkCase, outcomes: &[RunOutcome]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let grid = report_grid(case, outcomes);
    let cols = outcomes
        .iter()
        .map(|o| {
            grid.iter()
                .map(|&t| o.sys.reconstruct(&o.result.coefficients, t).0)
                .collect()
        })
        .collect();
    (grid, cols)
}

fn render_table(problem: &str, case: &BenchmarkCase, outcomes: &[RunOutcome]) -> String {
    let (grid, cols) = table_cells(case, outcomes);
    let exact = case.problem.exact();
    let mut headers = vec!["Grid point".to_string()];
    headers.extend(outcomes.iter().map(|o| o.combo.label()));
    if exact.is_some() {
        headers.push("Exact".into());
        for o in outcomes {
            headers.push(format!("|err| {}", o.combo.label()));
        }
    }

    let mut rows: Vec<Vec<String>> = Vec::new();
    for (r, &t) in grid.iter().enumerate() {
        let mut row = vec![sig9(t)];
        for col in &cols {
            row.push(sig9(col[r]));
        }
        if let Some(exact) = exact {
            let ex = exact(t);
            row.push(sig9(ex));
            for col in &cols {
                row.push(format!("{:.3e}", (col[r] - ex).abs()));
            }
        }
        rows.push(row);
    }

    let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let fmt_row = |cells: &[String], widths: &[usize]| -> String {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = String::new();
    let _ = writeln!(out, "Problem: {problem} (k_g = {})", case.problem.k_g);
    let _ = writeln!(out, "{}", fmt_row(&headers, &widths));
    for row in &rows {
        let _ = writeln!(out, "{}", fmt_row(row, &widths));
    }
    for o in outcomes {
        if let Some((linf, l2)) = o.norms {
            let _ = writeln!(
                out,
                "{}: L_inf = {:.6e}  L2 = {:.6e}  (iterations: {}, converged: {})",
                o.combo.label(),
                linf,
                l2,
                o.result.iterations,
                o.result.converged
            );
        } else {
            let _ = writeln!(
                out,
                "{}: iterations: {}, converged: {}",
                o.combo.label(),
                o.result.iterations,
                o.result.converged
            );
        }
    }
    out
}

fn render_csv(case: &BenchmarkCase, outcomes: &[RunOutcome]) -> String {
    let (grid, cols) = table_cells(case, outcomes);
    let exact = case.problem.exact();
    let mut out = String::new();
    let mut headers = vec!["grid_point".to_string()];
    headers.extend(outcomes.iter().map(|o| o.combo.label()));
    if exact.is_some() {
        headers.push("exact".into());
        for o in outcomes {
            headers.push(format!("abs_err_{}", o.combo.label()));
        }
    }
    let _ = writeln!(out, "{}", headers.join(","));
    for (r, &t) in grid.iter().enumerate() {
        let mut row = vec![format!("{t}")];
        for col in &cols {
            row.push(format!("{}", col[r]));
        }
        if let Some(exact) = exact {
            let ex = exact(t);
            row.push(format!("{ex}"));
            for col in &cols {
                row.push(format!("{}", (col[r] - ex).abs()));
            }
        }
        let _ = writeln!(out, "{}", row.join(","));
    }
    if exact.is_some() {
        let mut linf_row = vec!["L_inf".to_string()];
        let mut l2_row = vec!["L2".to_string()];
        for o in outcomes {
            let (linf, l2) = o.norms.expect("norms exist when exact does");
            linf_row.push(format!("{linf}"));
            l2_row.push(format!("{l2}"));
        }
        let _ = writeln!(out, "{}", linf_row.join(","));
        let _ = writeln!(out, "{}", l2_row.join(","));
    }
    out
}

fn render_json(problem: &str, outcomes: &[RunOutcome]) -> String {
    let objects: Vec<serde_json::Value> = outcomes
        .iter()
        .map(|o| {
            let mut obj = serde_json::json!({
                "problem": problem,
                "method": o.combo.method.name(),
                "resolution": o.combo.resolution,
                "grid": o.grid,
                "values": o.values,
                "iterations": o.result.iterations,
                "converged": o.result.converged,
            });
            if let Some((linf, l2)) = o.norms {
                obj["l_inf"] = serde_json::json!(linf);
                obj["l2"] = serde_json::json!(l2);
            }
            if let Some(d) = &o.result.diagnostic {
                obj["warning"] = serde_json::json!(d);
            }
            obj
        })
        .collect();
    let value = if objects.len() == 1 {
        objects.into_iter().next().unwrap()
    } else {
        serde_json::Value::Array(objects)
    };
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn sweep(
    cli: &Cli,
    case: &BenchmarkCase,
    methods: &[WaveletMethod],
    init: &InitSpec,
) -> Result<ExitCode, String> {
    if methods.len() != 1 {
        return Err("--sweep requires exactly one --method".into());
    }
    let method = methods[0];
    let resolutions: Vec<u32> = if cli.resolution.is_empty() {
        match method.family() {
            BasisFamily::Haar => vec![1, 2, 3],
            BasisFamily::Hermite => vec![4, 8, 16],
        }
    } else {
        cli.resolution.clone()
    };

    let mut outcomes = Vec::new();
    for &resolution in &resolutions {
        outcomes.push(run_combo(case, Combo { method, resolution }, cli, init)?);
    }

    let has_exact = case.problem.exact().is_some();
    let annotate = resolutions.len() > 1;
    let mut out = String::new();
    let mut headers: Vec<&str> = vec!["resolution"];
    if has_exact {
        headers.extend(["l_inf", "l2"]);
    } else {
        headers.push("self_diff");
    }
    headers.push("iterations");
    if annotate {
        headers.push("decreased");
    }
    let _ = writeln!(out, "{}", headers.join(","));

    let mut prev_measure: Option<f64> = None;
    for (k, o) in outcomes.iter().enumerate() {
        let measure = if has_exact {
            o.norms.unwrap().0
        } else if k == 0 {
            f64::NAN
        } else {
            // sup difference of successive solutions on the finer grid
            let prev = &outcomes[k - 1];
            o.grid
                .iter()
                .zip(&o.values)
                .map(|(&t, &v)| (v - prev.sys.reconstruct(&prev.result.coefficients, t).0).abs())
                .fold(0.0f64, f64::max)
        };
        let mut row = vec![format!("{}", o.combo.resolution)];
        if has_exact {
            let (linf, l2) = o.norms.unwrap();
            row.push(format!("{linf}"));
            row.push(format!("{l2}"));
        } else {
            row.push(if measure.is_nan() {
                String::new()
            } else {
                format!("{measure}")
            });
        }
        row.push(format!("{}", o.result.iterations));
        if annotate {
            row.push(match prev_measure {
                None => String::new(),
                Some(p) => format!("{}", measure < p),
            });
        }
        if !measure.is_nan() {
            prev_measure = Some(measure);
        }
        let _ = writeln!(out, "{}", row.join(","));
    }
    emit(&cli.out, &out)?;

    let all_converged = outcomes.iter().all(|o| o.result.converged);
    Ok(if all_converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
    }
}
