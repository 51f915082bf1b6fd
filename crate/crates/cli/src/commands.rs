use std::env;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use opstar::compactop::{
    eigenvalues_descending, kernel_operator, min_kernel_eigenvalue, named_kernel, volterra_operator, volterra_strict,
    GridOperator, OperatorKind,
};
use opstar::funcalc::{borel_calculus, continuous_calculus, holo_calculus, parse_atom, parse_holo_atom};
use opstar::groupalg::{convolve, fourier_transform, pontryagin_characters, GroupFunction};
use opstar::linalg::{operator_norm, svd};
use opstar::order::{is_positive, jordan_decompose, leq, monotone_power_check, nth_root, OrderedPair};
use opstar::projpolar::{join, meet, polar_decompose, support_projections, Projection};
use opstar::spectral::{spectral_radius_gelfand, spectrum};
use opstar::structure::{characters, commutant_of, gelfand_transform, generate_star_algebra, ideal_generated, StarAlgebra};
use opstar::{random, Matrix, OpError, ToleranceConfig};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, CompactCommand, Format, GroupCommand, LatticeOp, Method};
use crate::demos;
use crate::io::{complex_list, read_matrices, read_matrix, read_values, resolve_group, CliError, CliResult};

pub enum Output {
    Json(Value),
    Csv(String),
}

/// Command output plus whether it reports success (demos can fail).
pub struct Outcome {
    pub output: Output,
    pub ok: bool,
}

impl Outcome {
    fn json(value: impl Serialize) -> CliResult<Self> {
        let value = serde_json::to_value(value).map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;
        Ok(Outcome { output: Output::Json(value), ok: true })
    }

    fn csv(text: String) -> CliResult<Self> {
        Ok(Outcome { output: Output::Csv(text), ok: true })
    }
}

pub const PROFILE_VAR: &str = "OPSTAR_TOL_PROFILE";

/// Defaults scaled by `OPSTAR_TOL_PROFILE`, then explicit flags.
pub fn tolerance_config(cli: &Cli) -> CliResult<ToleranceConfig> {
    let factor = match env::var(PROFILE_VAR).ok().as_deref() {
        None | Some("") | Some("default") => 1.0,
        Some("strict") => 0.1,
        Some("loose") => 10.0,
        Some(other) => {
            return Err(CliError::Usage(format!("{PROFILE_VAR} must be strict, default or loose, got `{other}`")))
        }
    };
    let g = &cli.global;
    let mut cfg = ToleranceConfig::default().scaled(factor).with_seed(g.seed);
    if let Some(t) = g.tol_herm {
        cfg.herm_tol = t;
    }
    if let Some(t) = g.tol_rank {
        cfg.rank_tol = t;
    }
    if let Some(t) = g.tol_eig {
        cfg.eig_tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn supports_csv(command: &Command) -> bool {
    match command {
        Command::Spectrum { .. } => true,
        Command::Group { action } => !matches!(action, GroupCommand::Convolve { .. }),
        Command::Compact { action } => !matches!(action, CompactCommand::Volterra),
        _ => false,
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let cfg = tolerance_config(cli)?;
    let default_format = match &cli.command {
        Command::Compact { action: CompactCommand::Decay { .. } } => Format::Csv,
        _ => Format::Json,
    };
    let format = cli.global.format.unwrap_or(default_format);
    if format == Format::Csv && !supports_csv(&cli.command) {
        return Err(CliError::Usage(
            "CSV output is available for spectrum, group fourier/characters and compact kernel/decay".into(),
        ));
    }
    let csv = format == Format::Csv;
    match &cli.command {
        Command::Spectrum { file } => spectrum_command(file, csv, &cfg),
        Command::Calculus { file, func, method } => calculus_command(file, func, *method, &cfg),
        Command::Jordan { file } => Outcome::json(jordan_decompose(&read_matrix(file)?, &cfg)?),
        Command::Roots { file, k } => Outcome::json(nth_root(&read_matrix(file)?, *k, &cfg)?),
        Command::OrderCheck { a, b, power } => order_command(a, b.as_deref(), *power, &cfg),
        Command::Polar { file } => Outcome::json(polar_decompose(&read_matrix(file)?, &cfg)?),
        Command::Support { file } => Outcome::json(support_projections(&read_matrix(file)?, &cfg)?),
        Command::Lattice { op, p, q } => lattice_command(*op, p, q.as_deref(), &cfg),
        Command::Commutant { files } => {
            let set = read_matrices(files)?;
            let alg = commutant_of(set[0].dim(), &set, &cfg)?;
            Outcome::json(json!({ "dim": alg.dim(), "algebra": alg }))
        }
        Command::Characters { files } => characters_command(&read_matrices(files)?, &cfg),
        Command::SimpleCheck { file } => simple_check(file.as_deref(), cli.global.n, &cfg),
        Command::Group { action } => group_command(action, csv, &cfg),
        Command::Compact { action } => compact_command(action, cli.global.n, csv, &cfg),
        Command::Demo { name } => demo_command(name, &cfg),
    }
}

fn spectrum_command(file: &Path, csv: bool, cfg: &ToleranceConfig) -> CliResult<Outcome> {
    let spec = spectrum(&read_matrix(file)?, cfg)?;
    if !csv {
        return Outcome::json(&spec);
    }
    let mut out = String::from("index,re,im\n");
    for (k, z) in spec.sorted_points().iter().enumerate() {
        writeln!(out, "{k},{:?},{:?}", z.re, z.im).expect("write to string");
    }
    Outcome::csv(out)
}

fn calculus_command(file: &Path, func: &str, method: Method, cfg: &ToleranceConfig) -> CliResult<Outcome> {
    let a = read_matrix(file)?;
    let method = match method {
        Method::Auto if a.is_normal(cfg.herm_tol) => Method::Continuous,
        Method::Auto => Method::Holo,
        m => m,
    };
    let result = match method {
        Method::Holo => holo_calculus(&a, &parse_holo_atom(func)?, cfg)?,
        Method::Continuous => continuous_calculus(&a, &parse_atom(func)?, cfg)?,
        Method::Borel => borel_calculus(&a, &parse_atom(func)?, cfg)?,
        Method::Auto => unreachable!("resolved above"),
    };
    Outcome::json(result)
}

fn order_command(a: &Path, b: Option<&Path>, power: Option<f64>, cfg: &ToleranceConfig) -> CliResult<Outcome> {
    let a = read_matrix(a)?;
    let Some(b) = b else {
        if power.is_some() {
            return Err(CliError::Usage("--power needs two matrices".into()));
        }
        return Outcome::json(is_positive(&a, cfg)?);
    };
    let b = read_matrix(b)?;
    let holds = leq(&a, &b, cfg)?;
    match power {
        None => Outcome::json(json!({ "leq": holds })),
        Some(r) => {
            let pair = OrderedPair::new(a, b)?;
            let monotone = monotone_power_check(&pair, r, cfg)?;
            Outcome::json(json!({ "leq": holds, "power": r, "power_leq": monotone }))
        }
    }
}

fn lattice_command(op: LatticeOp, p: &Path, q: Option<&Path>, cfg: &ToleranceConfig) -> CliResult<Outcome> {
    let p = Projection::from_matrix(&read_matrix(p)?, cfg)?;
    let q = match (op, q) {
        (LatticeOp::Complement, None) => None,
        (LatticeOp::Complement, Some(_)) => return Err(CliError::Usage("complement takes one projection".into())),
        (_, None) => return Err(CliError::Usage("this operation takes two projections".into())),
        (_, Some(path)) => Some(Projection::from_matrix(&read_matrix(path)?, cfg)?),
    };
    match (op, q) {
        (LatticeOp::Complement, _) => Outcome::json(p.complement()),
        (LatticeOp::Meet, Some(q)) => Outcome::json(meet(&p, &q, cfg)?),
        (LatticeOp::Join, Some(q)) => Outcome::json(join(&p, &q, cfg)?),
        (LatticeOp::Leq, Some(q)) => Outcome::json(json!({ "leq": p.leq(&q, 1e-9) })),
        _ => unreachable!("second operand checked above"),
    }
}

fn characters_command(gens: &[Matrix], cfg: &ToleranceConfig) -> CliResult<Outcome> {
    let n = gens[0].dim();
    let mut all = gens.to_vec();
    all.push(Matrix::identity(n));
    let alg = generate_star_algebra(&all, cfg)?;
    let chars = characters(&alg, cfg)?;
    let transforms = gens
        .iter()
        .map(|g| gelfand_transform(&alg, &chars, g, cfg).map(|v| complex_list(&v)))
        .collect::<Result<Vec<_>, OpError>>()?;
    Outcome::json(json!({ "dim": alg.dim(), "characters": chars.len(), "transforms": transforms }))
}

fn simple_check(file: Option<&Path>, n: Option<usize>, cfg: &ToleranceConfig) -> CliResult<Outcome> {
    let t = match file {
        Some(path) => read_matrix(path)?,
        None => {
            let n = n.unwrap_or(3);
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            random::matrix(&mut random::rng(cfg.seed), n)
        }
    };
    let n = t.dim();
    let ideal = ideal_generated(&StarAlgebra::full(n), &t, cfg)?;
    Outcome::json(json!({ "n": n, "ideal_dim": ideal.dim(), "full_dim": n * n, "simple": ideal.dim() == n * n }))
}

fn group_function(group: &Arc<opstar::groupalg::GroupTable>, path: &Path) -> CliResult<GroupFunction> {
    Ok(GroupFunction::new(group.clone(), read_values(path)?)?)
}

fn group_command(action: &GroupCommand, csv: bool, cfg: &ToleranceConfig) -> CliResult<Outcome> {
    match action {
        GroupCommand::Fourier { group, f } => {
            let group = Arc::new(resolve_group(group)?);
            let hat = fourier_transform(&group_function(&group, f)?, cfg)?;
            if !csv {
                return Outcome::json(complex_list(&hat));
            }
            let mut out = String::from("character,re,im\n");
            for (k, z) in hat.iter().enumerate() {
                writeln!(out, "{k},{:?},{:?}", z.re, z.im).expect("write to string");
            }
            Outcome::csv(out)
        }
        GroupCommand::Convolve { group, f, g } => {
            let group = Arc::new(resolve_group(group)?);
            let product = convolve(&group_function(&group, f)?, &group_function(&group, g)?)?;
            Outcome::json(complex_list(product.values()))
        }
        GroupCommand::Characters { group } => {
            let group = Arc::new(resolve_group(group)?);
            let chars = pontryagin_characters(&group, cfg)?;
            if !csv {
                return Outcome::json(chars.iter().map(|c| complex_list(&c.values)).collect::<Vec<_>>());
            }
            let mut out = String::from("character,element,re,im\n");
            for (k, c) in chars.iter().enumerate() {
                for (g, z) in c.values.iter().enumerate() {
                    writeln!(out, "{k},{g},{:?},{:?}", z.re, z.im).expect("write to string");
                }
            }
            Outcome::csv(out)
        }
    }
}

/// Named kernel, or a file of samples `K(s_i, t_j)` turned into `K/n`.
fn load_kernel(name: &str, n: Option<usize>) -> CliResult<GridOperator> {
    if let Ok(kernel) = named_kernel(name) {
        return Ok(kernel_operator(kernel, n.unwrap_or(400))?);
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(CliError::Usage(format!("unknown kernel `{name}` (expected min, ones, or a file of samples)")));
    }
    let samples = read_matrix(path)?;
    let size = samples.dim();
    if let Some(n) = n.filter(|&n| n != size) {
        return Err(OpError::DimensionMismatch { expected: n, actual: size }.into());
    }
    let op = kernel_operator(|s, t| samples[(grid_index(s, size), grid_index(t, size))], size)?;
    Ok(GridOperator { kind: OperatorKind::Custom, ..op })
}

fn grid_index(node: f64, n: usize) -> usize {
    ((node * n as f64 - 0.5).round() as usize).min(n - 1)
}

/// Eigenvalues for Hermitian operators, singular values otherwise, both
/// in decreasing order.
fn decay_values(t: &GridOperator, cfg: &ToleranceConfig) -> CliResult<(&'static str, Vec<f64>)> {
    if t.matrix.is_hermitian(cfg.herm_tol) {
        Ok(("eigenvalue", eigenvalues_descending(t, cfg)?))
    } else {
        Ok(("singular value", svd(&t.matrix, cfg)?.s))
    }
}

fn compact_command(action: &CompactCommand, n: Option<usize>, csv: bool, cfg: &ToleranceConfig) -> CliResult<Outcome> {
    match action {
        CompactCommand::Volterra => {
            let n = n.unwrap_or(100);
            let v = volterra_operator(n)?;
            let strict = volterra_strict(n)?.matrix;
            Outcome::json(json!({
                "n": n,
                "spectral_radius": spectrum(&v.matrix, cfg)?.max_modulus(),
                "gelfand_radius": spectral_radius_gelfand(&v.matrix, cfg)?,
                "radius_bound": 2.0 / n as f64,
                "operator_norm": operator_norm(&v.matrix),
                "strict_variant_nilpotent": strict.powi(n as u32) == Matrix::zeros(n),
                "strict_variant_gelfand_radius": spectral_radius_gelfand(&strict, cfg)?,
            }))
        }
        CompactCommand::Kernel { name } => {
            let t = load_kernel(name, n)?;
            let (kind, values) = decay_values(&t, cfg)?;
            if !csv {
                return Outcome::json(json!({ "n": t.grid_n, "kernel": name, "kind": kind, "values": values }));
            }
            let mut out = String::from("index,value\n");
            for (k, v) in values.iter().enumerate() {
                writeln!(out, "{},{v:?}", k + 1).expect("write to string");
            }
            Outcome::csv(out)
        }
        CompactCommand::Decay { name, ranks } => {
            let t = load_kernel(name, n)?;
            let (_, values) = decay_values(&t, cfg)?;
            let rows = ranks
                .iter()
                .map(|&r| {
                    if r == 0 || r > values.len() {
                        return Err(OpError::BadCutoff { cutoff: r, max: values.len() });
                    }
                    let value = values[r - 1];
                    let reference = (name == "min").then(|| min_kernel_eigenvalue(r));
                    let error = reference.map(|x| (value - x).abs() / x);
                    Ok((r, value, reference, error))
                })
                .collect::<Result<Vec<_>, OpError>>()?;
            if csv {
                let mut out = String::from("index,value,reference,relative_error\n");
                let show = |x: Option<f64>| x.map(|v| format!("{v:?}")).unwrap_or_default();
                for (r, value, reference, error) in &rows {
                    writeln!(out, "{r},{value:?},{},{}", show(*reference), show(*error)).expect("write to string");
                }
                return Outcome::csv(out);
            }
            let rows: Vec<Value> = rows
                .iter()
                .map(|(r, value, reference, error)| {
                    json!({ "index": r, "value": value, "reference": reference, "relative_error": error })
                })
                .collect();
            Outcome::json(rows)
        }
    }
}

fn demo_command(name: &str, cfg: &ToleranceConfig) -> CliResult<Outcome> {
    let reports = if name == "all" {
        demos::NAMES.iter().map(|n| demos::run(n, cfg)).collect::<CliResult<Vec<_>>>()?
    } else {
        vec![demos::run(name, cfg)?]
    };
    let ok = reports.iter().all(|r| r.passed());
    let value = if name == "all" { serde_json::to_value(&reports) } else { serde_json::to_value(&reports[0]) }
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;
    Ok(Outcome { output: Output::Json(value), ok })
}
