//! Holomorphic, continuous and Borel functional calculi.

use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};
use crate::linalg::{eig_hermitian, eig_normal, solve, svd, Matrix, C64, ONE, ZERO};
use crate::spectral::{eigenvalues, sort_lexicographic};

type Evaluator = Arc<dyn Fn(C64) -> C64 + Send + Sync>;

/// A scalar function applied to spectral points. Indicators and other
/// discontinuous functions are allowed; they are only meaningful for the
/// Borel calculus.
#[derive(Clone)]
pub struct ScalarFunction {
    name: String,
    evaluator: Evaluator,
}

impl ScalarFunction {
    pub fn new(name: impl Into<String>, f: impl Fn(C64) -> C64 + Send + Sync + 'static) -> Self {
        ScalarFunction { name: name.into(), evaluator: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, z: C64) -> C64 {
        (self.evaluator)(z)
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &ScalarFunction) -> ScalarFunction {
        let inner = self.evaluator.clone();
        let outer_fn = outer.evaluator.clone();
        ScalarFunction::new(format!("{}∘{}", outer.name, self.name), move |z| outer_fn(inner(z)))
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> ScalarFunction {
        let f = self.evaluator.clone();
        ScalarFunction::new(format!("conj({})", self.name), move |z| f(z).conj())
    }

    pub fn product(&self, other: &ScalarFunction) -> ScalarFunction {
        let f = self.evaluator.clone();
        let g = other.evaluator.clone();
        ScalarFunction::new(format!("{}·{}", self.name, other.name), move |z| f(z) * g(z))
    }

    pub fn identity() -> Self {
        ScalarFunction::new("id", |z| z)
    }

    pub fn indicator(center: C64, radius: f64) -> Self {
        ScalarFunction::new(format!("indicator[{},{},{}]", center.re, center.im, radius), move |z| {
            if (z - center).norm() <= radius {
                ONE
            } else {
                ZERO
            }
        })
    }
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFunction({})", self.name)
    }
}

/// A function holomorphic on a neighbourhood of the integration disk.
///
/// `domain_radius_hint`, when set, is the radius of the origin-centred disk on
/// which the function is known to be holomorphic.
#[derive(Clone)]
pub struct HoloFunction {
    function: ScalarFunction,
    pub domain_radius_hint: Option<f64>,
}

impl HoloFunction {
    pub fn new(name: impl Into<String>, f: impl Fn(C64) -> C64 + Send + Sync + 'static) -> Self {
        HoloFunction { function: ScalarFunction::new(name, f), domain_radius_hint: None }
    }

    pub fn with_domain_radius(mut self, radius: f64) -> Self {
        self.domain_radius_hint = Some(radius);
        self
    }

    pub fn name(&self) -> &str {
        self.function.name()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.function.eval(z)
    }

    pub fn as_scalar(&self) -> &ScalarFunction {
        &self.function
    }
}

impl fmt::Debug for HoloFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoloFunction({}, hint {:?})", self.function.name, self.domain_radius_hint)
    }
}

fn parse_coefficients(text: &str) -> Result<Vec<C64>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| OpError::InvalidInput(format!("coefficient list: {e}")))?;
    let items = value
        .as_array()
        .ok_or_else(|| OpError::InvalidInput("coefficient list must be a JSON array".into()))?;
    if items.is_empty() {
        return Err(OpError::InvalidInput("coefficient list is empty".into()));
    }
    items.iter().map(parse_complex).collect()
}

/// A JSON number or `[re, im]` pair.
pub fn parse_complex(value: &Value) -> Result<C64> {
    let bad = || OpError::InvalidInput(format!("expected a number or [re, im], got {value}"));
    if let Some(x) = value.as_f64() {
        return Ok(C64::new(x, 0.0));
    }
    match value.as_array().map(|a| a.as_slice()) {
        Some([re, im]) => Ok(C64::new(re.as_f64().ok_or_else(bad)?, im.as_f64().ok_or_else(bad)?)),
        _ => Err(bad()),
    }
}

fn monomial_series(coeffs: Vec<C64>) -> impl Fn(C64) -> C64 + Send + Sync {
    move |z| coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

/// `Σ c_k T_k(z)` by the Clenshaw recurrence.
fn chebyshev_series(coeffs: Vec<C64>) -> impl Fn(C64) -> C64 + Send + Sync {
    move |z| {
        let mut b1 = ZERO;
        let mut b2 = ZERO;
        for &c in coeffs.iter().skip(1).rev() {
            let b0 = c + 2.0 * z * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        coeffs[0] + z * b1 - b2
    }
}

/// `z^r` on the principal branch, with `0^r = 0` for `r > 0`.
fn principal_power(z: C64, r: f64) -> C64 {
    if z == ZERO {
        return if r > 0.0 {
            ZERO
        } else if r == 0.0 {
            ONE
        } else {
            C64::new(f64::INFINITY, 0.0)
        };
    }
    if z.im == 0.0 && z.re > 0.0 {
        return C64::new(z.re.powf(r), 0.0);
    }
    z.powf(r)
}

/// Parses a named function atom: `exp`, `log`, `sqrt`, `abs`, `power:r`,
/// `indicator:[re,im,radius]`, `poly:[c0,c1,…]` (monomial coefficients) or
/// `cheb:[c0,c1,…]` (Chebyshev coefficients). Coefficients are numbers or
/// `[re, im]` pairs.
pub fn parse_atom(spec: &str) -> Result<ScalarFunction> {
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    };
    let need_arg = || arg.ok_or_else(|| OpError::InvalidInput(format!("function atom `{head}` needs an argument")));
    let f = match head {
        "exp" => ScalarFunction::new("exp", |z: C64| z.exp()),
        "log" => ScalarFunction::new("log", |z: C64| if z == ZERO { C64::new(f64::NEG_INFINITY, 0.0) } else { z.ln() }),
        "sqrt" => ScalarFunction::new("sqrt", |z| principal_power(z, 0.5)),
        "abs" => ScalarFunction::new("abs", |z: C64| C64::new(z.norm(), 0.0)),
        "power" => {
            let r: f64 = need_arg()?
                .parse()
                .map_err(|_| OpError::InvalidInput(format!("power exponent `{}` is not a number", arg.unwrap_or(""))))?;
            if !r.is_finite() {
                return Err(OpError::InvalidInput("power exponent must be finite".into()));
            }
            ScalarFunction::new(format!("power:{r}"), move |z| principal_power(z, r))
        }
        "indicator" => {
            let parts = parse_coefficients(need_arg()?)?;
            match parts.as_slice() {
                [re, im, radius] if re.im == 0.0 && im.im == 0.0 && radius.im == 0.0 && radius.re >= 0.0 => {
                    ScalarFunction::indicator(C64::new(re.re, im.re), radius.re)
                }
                _ => return Err(OpError::InvalidInput("indicator expects [re, im, radius] with radius ≥ 0".into())),
            }
        }
        "poly" => ScalarFunction::new(spec, monomial_series(parse_coefficients(need_arg()?)?)),
        "cheb" => ScalarFunction::new(spec, chebyshev_series(parse_coefficients(need_arg()?)?)),
        other => return Err(OpError::InvalidInput(format!("unknown function atom `{other}`"))),
    };
    Ok(f)
}

/// Parses an atom usable by the holomorphic calculus. Only entire atoms
/// (`exp`, `poly`, `cheb`) qualify, since the calculus integrates over a
/// single disk that may contain branch points of the others.
pub fn parse_holo_atom(spec: &str) -> Result<HoloFunction> {
    let head = spec.split(':').next().unwrap_or("").trim();
    match head {
        "exp" | "poly" | "cheb" => {
            let f = parse_atom(spec)?;
            Ok(HoloFunction { function: f, domain_radius_hint: None })
        }
        "log" | "sqrt" | "abs" | "power" | "indicator" => Err(OpError::InvalidInput(format!(
            "function atom `{head}` is not entire; use the continuous or Borel calculus"
        ))),
        other => Err(OpError::InvalidInput(format!("unknown function atom `{other}`"))),
    }
}

/// Integration circle `(center, radius)` for the holomorphic calculus.
pub fn integration_circle(a: &Matrix, cfg: &ToleranceConfig) -> Result<(C64, f64)> {
    let eigs = eigenvalues(a, cfg)?;
    let center = eigs.iter().sum::<C64>() / eigs.len() as f64;
    let spread = eigs.iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
    Ok((center, 1.25 * spread + 0.1 * (1.0 + a.frobenius_norm())))
}

const BASE_NODES: usize = 256;

/// `f(a) = (1/2πi) ∮ f(λ)(λ − a)⁻¹ dλ` by the trapezoid rule on a circle
/// enclosing the spectrum.
///
/// The sum over 512 nodes is compared against its 256-node subsum.
pub fn holo_calculus(a: &Matrix, f: &HoloFunction, cfg: &ToleranceConfig) -> Result<Matrix> {
    let n = a.dim();
    let (center, radius) = integration_circle(a, cfg)?;
    let eigs = eigenvalues(a, cfg)?;
    let margin = 10.0 * cfg.rank_tol * (1.0 + a.frobenius_norm());
    if let Some(hint) = f.domain_radius_hint {
        if center.norm() + radius >= hint {
            return Err(OpError::ContourTooClose);
        }
    }
    // finiteness of f on the closed disk, sampled on concentric circles
    for ring in 0..=4 {
        let r = radius * ring as f64 / 4.0;
        let count = if ring == 0 { 1 } else { 64 };
        for k in 0..count {
            let z = center + C64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / count as f64);
            let w = f.eval(z);
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(OpError::ContourTooClose);
            }
        }
    }

    let total = 2 * BASE_NODES;
    let mut fine = Matrix::zeros(n);
    let mut coarse = Matrix::zeros(n);
    let identity = Matrix::identity(n);
    for j in 0..total {
        let offset = C64::from_polar(radius, 2.0 * std::f64::consts::PI * j as f64 / total as f64);
        let z = center + offset;
        if eigs.iter().any(|e| (z - e).norm() <= margin) {
            return Err(OpError::ContourTooClose);
        }
        let value = f.eval(z);
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(OpError::ContourTooClose);
        }
        let res = solve(&(-a).shift(z), &identity, cfg).map_err(|_| OpError::ContourTooClose)?;
        let term = res.scale(value * offset);
        if j % 2 == 0 {
            coarse = &coarse + &term;
        }
        fine = &fine + &term;
    }
    let fine = fine.scale_real(1.0 / total as f64);
    let coarse = coarse.scale_real(1.0 / BASE_NODES as f64);
    let change = fine.distance(&coarse);
    if change > 1e-8 * (1.0 + fine.frobenius_norm()) {
        return Err(OpError::QuadratureNotConverged { change });
    }
    Ok(fine)
}

fn require_normal(a: &Matrix, cfg: &ToleranceConfig) -> Result<()> {
    if a.is_normal(cfg.herm_tol) {
        Ok(())
    } else {
        Err(OpError::NotNormal { defect: a.normal_defect() })
    }
}

/// `f(a) = V·diag(f(λ_k))·V*` for normal `a`.
pub fn continuous_calculus(a: &Matrix, f: &ScalarFunction, cfg: &ToleranceConfig) -> Result<Matrix> {
    require_normal(a, cfg)?;
    let eig = eig_normal(a, cfg)?;
    Ok(eig.reconstruct_with(|z| f.eval(z)))
}

/// One eigenvalue cluster of a normal matrix with its eigenprojection.
#[derive(Debug, Clone)]
pub struct SpectralProjection {
    /// Mean of the clustered eigenvalues.
    pub eigenvalue: C64,
    pub multiplicity: usize,
    pub projection: Matrix,
}

/// Single-linkage clusters of points closer than `radius`, each sorted, in
/// lexicographic order of their first member.
pub(crate) fn cluster_points(points: &[C64], radius: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        parent[i] = root;
        root
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (points[i] - points[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups.sort_by(|x, y| {
        let (p, q) = (points[x[0]], points[y[0]]);
        p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im))
    });
    groups
}

/// Eigenprojections of a normal matrix, one per eigenvalue cluster of radius
/// `1e-7·(1 + ‖a‖)`, sorted lexicographically by eigenvalue.
pub fn spectral_projections(a: &Matrix, cfg: &ToleranceConfig) -> Result<Vec<SpectralProjection>> {
    require_normal(a, cfg)?;
    let eig = eig_normal(a, cfg)?;
    let radius = 1e-7 * (1.0 + a.frobenius_norm());
    let n = a.dim();
    let mut out: Vec<SpectralProjection> = cluster_points(&eig.values, radius)
        .into_iter()
        .map(|members| {
            let eigenvalue = members.iter().map(|&k| eig.values[k]).sum::<C64>() / members.len() as f64;
            let cols: Vec<Vec<C64>> = members.iter().map(|&k| eig.vectors.column(k)).collect();
            let projection = Matrix::from_fn(n, |i, j| cols.iter().map(|v| v[i] * v[j].conj()).sum());
            SpectralProjection { eigenvalue, multiplicity: members.len(), projection }
        })
        .collect();
    out.sort_by(|x, y| x.eigenvalue.re.total_cmp(&y.eigenvalue.re).then(x.eigenvalue.im.total_cmp(&y.eigenvalue.im)));
    Ok(out)
}

/// `Σ_c f(λ_c)·P_c` over eigenvalue clusters; `f` may be discontinuous.
pub fn borel_calculus(a: &Matrix, f: &ScalarFunction, cfg: &ToleranceConfig) -> Result<Matrix> {
    let parts = spectral_projections(a, cfg)?;
    let mut out = Matrix::zeros(a.dim());
    for part in &parts {
        let value = f.eval(part.eigenvalue);
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(OpError::UndefinedAtSpectrum { re: part.eigenvalue.re, im: part.eigenvalue.im });
        }
        if value != ZERO {
            out = &out + &part.projection.scale(value);
        }
    }
    Ok(out)
}

/// Matrix exponential by scaling and squaring of the Taylor series.
pub fn matrix_exp(a: &Matrix) -> Matrix {
    let n = a.dim();
    let norm = a.frobenius_norm();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let b = a.scale_real(0.5f64.powi(squarings as i32));
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=30 {
        term = (&term * &b).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.frobenius_norm() <= 1e-18 * sum.frobenius_norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `a^r` for positive `a` through the Hermitian eigendecomposition.
///
/// Eigenvalues at or below `rank_tol·λ_max` count as zero, with `0^r = 0`
/// for `r > 0` and `a^0 = 1`. Negative exponents need an invertible `a`.
pub fn matrix_power(a: &Matrix, r: f64, cfg: &ToleranceConfig) -> Result<Matrix> {
    let eig = eig_hermitian(a, cfg)?;
    let values = eig.real_values();
    let lambda_min = values.first().copied().unwrap_or(0.0);
    let lambda_max = values.last().copied().unwrap_or(0.0).max(0.0);
    if lambda_min < -cfg.eig_tol * (1.0 + lambda_max.max(-lambda_min)) {
        return Err(OpError::NotPositive { min_eigenvalue: lambda_min });
    }
    let cutoff = cfg.rank_tol * lambda_max;
    if r < 0.0 && values.iter().any(|&t| t <= cutoff) {
        return Err(OpError::Singular);
    }
    if r == 0.0 {
        return Ok(Matrix::identity(a.dim()));
    }
    Ok(eig.reconstruct_with(|z| if z.re <= cutoff { ZERO } else { C64::new(z.re.powf(r), 0.0) }))
}

/// `|a| = (a*a)^{1/2}`, assembled from the singular value decomposition.
pub fn matrix_abs(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let d = svd(a, cfg)?;
    let n = a.dim();
    Ok(Matrix::from_fn(n, |i, j| (0..n).map(|k| d.v[(i, k)] * d.s[k] * d.v[(j, k)].conj()).sum()))
}

/// Applies `f` to every point of a multiset, sorted lexicographically.
pub fn map_points(points: &[C64], f: impl Fn(C64) -> C64) -> Vec<C64> {
    let mut out: Vec<C64> = points.iter().map(|&z| f(z)).collect();
    sort_lexicographic(&mut out);
    out
}
