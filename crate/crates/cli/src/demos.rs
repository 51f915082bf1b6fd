//! Worked examples with pinned inputs and stored expectations.

use std::f64::consts::PI;
use std::sync::Arc;

use opstar::compactop::{shift_defect, truncated_shift, volterra_operator, volterra_strict};
use opstar::groupalg::{fourier_transform, left_regular, pontryagin_characters, GroupFunction, GroupTable};
use opstar::linalg::{operator_norm, ONE};
use opstar::order::{min_eigenvalue, monotone_power_check, OrderedPair};
use opstar::spectral::{spectral_radius_gelfand, spectrum};
use opstar::structure::{ideal_generated, unitization_report, StarAlgebra, Unitized};
use opstar::{random, Matrix, ToleranceConfig, C64};
use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{complex_list, CliError, CliResult};

pub const NAMES: [&str; 6] = [
    "unitization-gap",
    "monotone-counterexample",
    "mn-simple",
    "z3-fourier",
    "volterra-quasinilpotent",
    "toeplitz-defect",
];

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct DemoReport {
    pub demo: &'static str,
    pub statement: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    pub status: &'static str,
}

impl DemoReport {
    fn new(demo: &'static str, statement: &'static str, inputs: Value, outputs: Value, checks: Vec<Check>) -> Self {
        let status = if checks.iter().all(|c| c.pass) { "PASS" } else { "FAIL" };
        DemoReport { demo, statement, inputs, outputs, checks, status }
    }

    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }
}

fn check(name: impl Into<String>, pass: bool) -> Check {
    Check { name: name.into(), pass }
}

pub fn run(name: &str, cfg: &ToleranceConfig) -> CliResult<DemoReport> {
    match name {
        "unitization-gap" => unitization_gap(),
        "monotone-counterexample" => monotone_counterexample(cfg),
        "mn-simple" => mn_simple(cfg),
        "z3-fourier" => z3_fourier(cfg),
        "volterra-quasinilpotent" => volterra_quasinilpotent(cfg),
        "toeplitz-defect" => toeplitz_defect(cfg),
        _ => Err(CliError::UnknownDemo { name: name.into(), available: format!("{}, all", NAMES.join(", ")) }),
    }
}

fn unitization_gap() -> CliResult<DemoReport> {
    let e12 = Matrix::unit(2, 0, 1);
    let z = Unitized::new(e12.clone(), ONE);
    let report = unitization_report(&z);
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let checks = vec![
        check("‖z‖² = 4 under ‖x‖ + |λ|", (report.banach.norm_squared - 4.0).abs() <= 1e-9),
        check("‖z*z‖ = 1 + golden ratio under ‖x‖ + |λ|", (report.banach.star_product_norm - 1.0 - golden).abs() <= 1e-9),
        check("C*-identity fails under ‖x‖ + |λ|", report.banach.defect > 0.1),
        check("C*-identity holds under the direct-sum norm", report.cstar.defect <= 1e-10),
    ];
    Ok(DemoReport::new(
        "unitization-gap",
        "Adjoining a unit with the norm ‖x‖ + |λ| gives a Banach *-algebra that is not a C*-algebra; the norm of the direct-sum representation repairs it.",
        json!({ "x": e12, "lambda": [1.0, 0.0] }),
        serde_json::to_value(report).expect("plain numbers"),
        checks,
    ))
}

fn monotone_counterexample(cfg: &ToleranceConfig) -> CliResult<DemoReport> {
    let a = Matrix::from_real_rows(&[[2.0, 2.0], [2.0, 2.0]]);
    let b = Matrix::from_real_diag(&[3.0, 6.0]);
    let pair = OrderedPair::new(a.clone(), b.clone())?;
    let ordered = pair.holds(cfg)?;
    let root = monotone_power_check(&pair, 0.5, cfg)?;
    let square = monotone_power_check(&pair, 2.0, cfg)?;
    let gap = min_eigenvalue(&(&(&b * &b) - &(&a * &a)), cfg)?;
    let checks = vec![
        check("0 ≤ a ≤ b", ordered),
        check("a^(1/2) ≤ b^(1/2)", root),
        check("a² ≤ b² is violated", !square),
        check("b² − a² has a negative eigenvalue", gap < 0.0),
    ];
    Ok(DemoReport::new(
        "monotone-counterexample",
        "t ↦ t^r is operator monotone for 0 < r ≤ 1, but squaring does not preserve the order of positive matrices.",
        json!({ "a": a, "b": b }),
        json!({ "leq": ordered, "root_leq": root, "square_leq": square, "min_eigenvalue_b2_minus_a2": gap }),
        checks,
    ))
}

fn mn_simple(cfg: &ToleranceConfig) -> CliResult<DemoReport> {
    let mut dims = Vec::new();
    let mut checks = Vec::new();
    for n in 2..=4usize {
        let t = random::matrix(&mut random::rng(cfg.seed.wrapping_add(n as u64)), n);
        let dim = ideal_generated(&StarAlgebra::full(n), &t, cfg)?.dim();
        checks.push(check(format!("ideal of M_{n} generated by a random element has dimension {}", n * n), dim == n * n));
        dims.push(dim);
    }
    let diagonal = ideal_generated(&StarAlgebra::diagonal(2), &Matrix::unit(2, 0, 0), cfg)?.dim();
    checks.push(check("E₁₁ generates a proper ideal of the diagonal algebra D₂", diagonal == 1));
    Ok(DemoReport::new(
        "mn-simple",
        "Every nonzero element of M_n generates all of M_n as a two-sided ideal, so M_n is simple; commutative algebras such as D₂ are not.",
        json!({ "sizes": [2, 3, 4], "seed": cfg.seed }),
        json!({ "ideal_dims": dims, "diagonal_ideal_dim": diagonal }),
        checks,
    ))
}

fn z3_fourier(cfg: &ToleranceConfig) -> CliResult<DemoReport> {
    let group = Arc::new(GroupTable::cyclic(3)?);
    let chars = pontryagin_characters(&group, cfg)?;
    let dft_defect = chars
        .iter()
        .enumerate()
        .flat_map(|(j, c)| {
            c.values.iter().enumerate().map(move |(k, z)| (z - C64::from_polar(1.0, 2.0 * PI * (j * k) as f64 / 3.0)).norm())
        })
        .fold(0.0, f64::max);
    let f = GroupFunction::new(group, vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(-1.0, 0.5)])?;
    let hat = fourier_transform(&f, cfg)?;
    let sup = hat.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let norm = operator_norm(&left_regular(&f));
    let checks = vec![
        check("character matrix equals the 3-point DFT within 1e-10", dft_defect <= 1e-10),
        check("‖λ(f)‖ = max |f̂| within 1e-8", (norm - sup).abs() <= 1e-8),
    ];
    Ok(DemoReport::new(
        "z3-fourier",
        "The characters of ℤ₃ are the columns of the discrete Fourier matrix, and the Fourier transform is the Gelfand transform of the group C*-algebra.",
        json!({ "group": "z3", "f": complex_list(f.values()) }),
        json!({
            "characters": chars.iter().map(|c| complex_list(&c.values)).collect::<Vec<_>>(),
            "fourier": complex_list(&hat),
            "regular_norm": norm,
        }),
        checks,
    ))
}

fn volterra_quasinilpotent(cfg: &ToleranceConfig) -> CliResult<DemoReport> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for n in [25usize, 50, 100, 200] {
        let v = volterra_operator(n)?.matrix;
        let radius = spectrum(&v, cfg)?.max_modulus();
        let gelfand = spectral_radius_gelfand(&v, cfg)?;
        let norm = operator_norm(&v);
        let strict = volterra_strict(n)?.matrix;
        let nilpotent = strict.powi(n as u32) == Matrix::zeros(n);
        let strict_radius = spectral_radius_gelfand(&strict, cfg)?;
        let bound = 2.0 / n as f64;
        checks.push(check(format!("n = {n}: spectral radius ≤ 2/n"), radius <= bound && gelfand <= bound));
        checks.push(check(format!("n = {n}: strictly lower variant is nilpotent"), nilpotent && strict_radius == 0.0));
        checks.push(check(format!("n = {n}: operator norm ≤ 1"), norm <= 1.0));
        rows.push(json!({
            "n": n,
            "spectral_radius": radius,
            "gelfand_radius": gelfand,
            "operator_norm": norm,
            "strict_gelfand_radius": strict_radius,
        }));
    }
    Ok(DemoReport::new(
        "volterra-quasinilpotent",
        "The Volterra operator is compact with spectrum {0}; its discretizations have spectral radius O(1/n) while their norms stay bounded.",
        json!({ "grid_sizes": [25, 50, 100, 200] }),
        Value::Array(rows),
        checks,
    ))
}

fn toeplitz_defect(cfg: &ToleranceConfig) -> CliResult<DemoReport> {
    let n = 8;
    let s = truncated_shift(n)?.matrix;
    let defect = shift_defect(n, cfg)?;
    let norm = operator_norm(&s);
    let radius = spectral_radius_gelfand(&s, cfg)?;
    let checks = vec![
        check("‖S‖ = 1", (norm - 1.0).abs() <= 1e-12),
        check("1 − S*S and 1 − SS* have rank one", defect.isometry_defect_rank == 1 && defect.coisometry_defect_rank == 1),
        check("defects are the corner matrix units", defect.exact_rank_one_defects),
        check("S is not normal", !s.is_normal(cfg.herm_tol)),
        check("truncated shift is nilpotent", radius == 0.0),
    ];
    Ok(DemoReport::new(
        "toeplitz-defect",
        "The unilateral shift is an isometry that is not unitary; cut down to n coordinates it fails S*S = 1 by a rank-one defect.",
        json!({ "n": n }),
        json!({ "defect": defect, "operator_norm": norm, "spectral_radius": radius }),
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_passes() {
        let cfg = ToleranceConfig::default();
        for name in NAMES {
            let report = run(name, &cfg).unwrap();
            assert!(report.passed(), "{name}: {:?}", report.checks);
        }
    }

    #[test]
    fn unknown_demo_lists_names() {
        let err = run("nope", &ToleranceConfig::default()).unwrap_err();
        assert!(err.to_string().contains("mn-simple"));
    }
}
