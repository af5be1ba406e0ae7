//! Benchmark problems: five reaction/diffusion models plus manufactured
//! problems for oracle testing, with golden solution tables as CSV fixtures.

use crate::error::{Error, Result};
use crate::problem::{BcKind, BoundaryCondition, SBVProblem};
use crate::solver::WaveletMethod;

/// Default nodal initial vector for a benchmark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitRule {
    Zeros,
    Const(f64),
}

impl InitRule {
    pub fn vector(&self, n: usize) -> Vec<f64> {
        match self {
            InitRule::Zeros => vec![0.0; n],
            InitRule::Const(v) => vec![*v; n],
        }
    }
}

/// Which column of a golden table a row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoldenColumn {
    Method(WaveletMethod),
    Exact,
}

/// One tabulated value from a solution table.
#[derive(Debug, Clone)]
pub struct GoldenRow {
    pub grid_point: f64,
    pub column: GoldenColumn,
    pub value: f64,
    pub source_table: String,
}

/// A registered problem with its parameters, default initial vector and
/// (when the problem comes from a published table) its golden rows.
#[derive(Debug, Clone)]
pub struct BenchmarkCase {
    pub problem: SBVProblem,
    pub params: Vec<(&'static str, f64)>,
    pub default_init: InitRule,
    pub golden_rows: Option<Vec<GoldenRow>>,
}

const GOLDEN_TABLES: [&str; 10] = [
    include_str!("../fixtures/golden/table01.csv"),
    include_str!("../fixtures/golden/table02.csv"),
    include_str!("../fixtures/golden/table03.csv"),
    include_str!("../fixtures/golden/table04.csv"),
    include_str!("../fixtures/golden/table05.csv"),
    include_str!("../fixtures/golden/table06.csv"),
    include_str!("../fixtures/golden/table07.csv"),
    include_str!("../fixtures/golden/table08.csv"),
    include_str!("../fixtures/golden/table09.csv"),
    include_str!("../fixtures/golden/table10.csv"),
];

/// Parse one golden fixture (1-based table number).
pub fn golden_table(table_no: usize) -> Vec<GoldenRow> {
    assert!((1..=10).contains(&table_no), "tables are numbered 1..=10");
    let text = GOLDEN_TABLES[table_no - 1];
    let mut rows = Vec::new();
    for line in text.lines().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(4, ',');
        let grid_point: f64 = parts.next().unwrap().parse().expect("grid point");
        let method_str = parts.next().unwrap();
        let value: f64 = parts.next().unwrap().parse().expect("value");
        let source_table = parts.next().unwrap().to_string();
        let column = if method_str == "Exact" {
            GoldenColumn::Exact
        } else {
            GoldenColumn::Method(WaveletMethod::parse(method_str).expect("method name"))
        };
        rows.push(GoldenRow {
            grid_point,
            column,
            value,
            source_table,
        });
    }
    rows
}

/// Exothermic reaction with the generalized rate law:
/// f(t, y) = B exp(-A / (c^n + y^n)^{1/n}) with A = B = c = 1.
pub fn make_arrhenius(n: u32, k_g: f64) -> BenchmarkCase {
    assert!(n >= 1);
    let nf = n as f64;
    let f = move |_t: f64, y: f64| (-1.0 / (1.0 + y.powf(nf)).powf(1.0 / nf)).exp();
    let f_y = move |t: f64, y: f64| {
        f(t, y) * y.powf(nf - 1.0) * (1.0 + y.powf(nf)).powf(-1.0 - 1.0 / nf)
    };
    let problem = SBVProblem::new(
        format!("arrhenius-n{n}-k{}", k_g as i64),
        k_g,
        f,
        f_y,
        BoundaryCondition::neumann_dirichlet(0.0, 0.0),
    );
    let golden = match (n, k_g as i64) {
        (1, 1) => Some(1),
        (1, 2) => Some(2),
        (2, 1) => Some(3),
        (2, 2) => Some(4),
        (3, 1) => Some(5),
        (3, 2) => Some(6),
        _ => None,
    };
    BenchmarkCase {
        problem,
        params: vec![("A", 1.0), ("B", 1.0), ("c", 1.0), ("n", nf), ("k_g", k_g)],
        default_init: InitRule::Zeros,
        golden_rows: golden.map(golden_table),
    }
}

/// Stellar structure: f = y^5, spherical operator, with the exact solution
/// y(t) = sqrt(3 / (3 + t^2)).
pub fn make_stellar() -> BenchmarkCase {
    let beta = (3.0f64 / 4.0).sqrt();
    let problem = SBVProblem::new(
        "stellar",
        2.0,
        |_, y: f64| y.powi(5),
        |_, y: f64| 5.0 * y.powi(4),
        BoundaryCondition::neumann_dirichlet(0.0, beta),
    )
    .with_exact(|t| (3.0 / (3.0 + t * t)).sqrt());
    BenchmarkCase {
        problem,
        params: vec![("k_g", 2.0)],
        default_init: InitRule::Const(beta),
        golden_rows: Some(golden_table(7)),
    }
}

/// Thermal explosion in a cylindrical vessel: f = e^y, with the exact
/// solution y(t) = 2 ln((4 - 2 sqrt 2) / ((3 - 2 sqrt 2) t^2 + 1)).
pub fn make_thermal_explosion() -> BenchmarkCase {
    let problem = SBVProblem::new(
        "thermal-explosion",
        1.0,
        |_, y: f64| y.exp(),
        |_, y: f64| y.exp(),
        BoundaryCondition::neumann_dirichlet(0.0, 0.0),
    )
    .with_exact(|t| {
        let s = 2.0f64.sqrt();
        2.0 * ((4.0 - 2.0 * s) / ((3.0 - 2.0 * s) * t * t + 1.0)).ln()
    });
    BenchmarkCase {
        problem,
        params: vec![("k_g", 1.0)],
        default_init: InitRule::Zeros,
        golden_rows: Some(golden_table(8)),
    }
}

/// Rotationally symmetric shallow membrane caps: f = 1/(8y^2) - 1/2 under
/// the radial operator with the cubed weight (k_g = 3), which is the
/// operator the reference solution values satisfy. Evaluations too close to
/// y = 0 are undefined; the guard makes the solver report non-convergence
/// instead of silently iterating on garbage.
pub fn make_membrane() -> BenchmarkCase {
    let guard = 1e-8;
    let problem = SBVProblem::new(
        "membrane",
        3.0,
        move |_, y: f64| {
            if y.abs() < guard {
                f64::NAN
            } else {
                1.0 / (8.0 * y * y) - 0.5
            }
        },
        move |_, y: f64| {
            if y.abs() < guard {
                f64::NAN
            } else {
                -1.0 / (4.0 * y * y * y)
            }
        },
        BoundaryCondition::neumann_dirichlet(0.0, 1.0),
    );
    BenchmarkCase {
        problem,
        params: vec![("k_g", 3.0)],
        default_init: InitRule::Const(1.0),
        golden_rows: Some(golden_table(9)),
    }
}

/// Thermal distribution in the human head: f = e^{-y}, spherical operator,
/// Robin condition 2 y(1) + y'(1) = 0.
pub fn make_human_head() -> BenchmarkCase {
    let problem = SBVProblem::new(
        "human-head",
        2.0,
        |_, y: f64| (-y).exp(),
        |_, y: f64| -(-y).exp(),
        BoundaryCondition::neumann_robin(0.0, 2.0, 1.0, 0.0),
    );
    BenchmarkCase {
        problem,
        params: vec![("k_g", 2.0), ("a", 2.0), ("b", 1.0)],
        default_init: InitRule::Zeros,
        golden_rows: Some(golden_table(10)),
    }
}

fn poly_eval(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

/// Build a problem whose exact solution is the given polynomial (ascending
/// coefficients): f(t, y) = -(p'' + (k_g/t) p') + (y - p(t)), so f_y = 1 and
/// the polynomial solves the equation identically. Neumann cases require
/// p'(0) = 0 (which also makes (k_g/t) p' polynomial).
pub fn make_manufactured(
    exact_coeffs: &[f64],
    k_g: f64,
    case: BcKind,
) -> Result<BenchmarkCase> {
    let p = exact_coeffs.to_vec();
    let dp = poly_derivative(&p);
    let ddp = poly_derivative(&dp);
    let slope_at_zero = dp.first().copied().unwrap_or(0.0);
    let neumann = matches!(case, BcKind::NeumannDirichlet | BcKind::NeumannRobin);
    if neumann && slope_at_zero != 0.0 {
        return Err(Error::InvalidManufactured);
    }

    let bc = match case {
        BcKind::NeumannDirichlet => {
            BoundaryCondition::neumann_dirichlet(0.0, poly_eval(&p, 1.0))
        }
        BcKind::DirichletDirichlet => {
            BoundaryCondition::dirichlet_dirichlet(poly_eval(&p, 0.0), poly_eval(&p, 1.0))
        }
        BcKind::NeumannRobin => {
            let (a, b) = (2.0, 1.0);
            let beta = a * poly_eval(&p, 1.0) + b * poly_eval(&dp, 1.0);
            BoundaryCondition::neumann_robin(0.0, a, b, beta)
        }
    };

    let name = format!("manufactured-deg{}", p.len().saturating_sub(1));
    let (fp, fdp, fddp) = (p.clone(), dp, ddp);
    let problem = SBVProblem::new(
        name,
        k_g,
        move |t: f64, y: f64| {
            -(poly_eval(&fddp, t) + k_g * poly_eval(&fdp, t) / t) + (y - poly_eval(&fp, t))
        },
        |_, _| 1.0,
        bc,
    )
    .with_exact(move |t| poly_eval(&p, t));
    Ok(BenchmarkCase {
        problem,
        params: vec![("k_g", k_g)],
        default_init: InitRule::Zeros,
        golden_rows: None,
    })
}

/// All registry keys, including the parameterized reaction variants.
pub const REGISTRY_KEYS: [&str; 10] = [
    "arrhenius",
    "arrhenius-n1-k2",
    "arrhenius-n2-k1",
    "arrhenius-n2-k2",
    "arrhenius-n3-k1",
    "arrhenius-n3-k2",
    "stellar",
    "thermal-explosion",
    "membrane",
    "human-head",
];

/// Look a benchmark up by key. `arrhenius` is the (n = 1, k_g = 1) case;
/// the other parameter pairs use `arrhenius-n<n>-k<k>` keys.
pub fn by_key(key: &str) -> Result<BenchmarkCase> {
    match key {
        "arrhenius" | "arrhenius-n1-k1" => Ok(make_arrhenius(1, 1.0)),
        "arrhenius-n1-k2" => Ok(make_arrhenius(1, 2.0)),
        "arrhenius-n2-k1" => Ok(make_arrhenius(2, 1.0)),
        "arrhenius-n2-k2" => Ok(make_arrhenius(2, 2.0)),
        "arrhenius-n3-k1" => Ok(make_arrhenius(3, 1.0)),
        "arrhenius-n3-k2" => Ok(make_arrhenius(3, 2.0)),
        "stellar" => Ok(make_stellar()),
        "thermal-explosion" => Ok(make_thermal_explosion()),
        "membrane" => Ok(make_membrane()),
        "human-head" => Ok(make_human_head()),
        other => Err(Error::UnknownProblem(other.to_string())),
    }
}
