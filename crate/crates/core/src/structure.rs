//! *-subalgebras of `M_n` and algebra-level constructions on them.
//!
//! Subspaces of `M_n` are handled through row-major vectorization, under
//! which the trace inner product `⟨a, b⟩ = tr(b*a)` becomes the ordinary
//! inner product on `ℂ^{n²}`.

use serde::{Serialize, Serializer};

use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};
use crate::funcalc::matrix_power;
use crate::linalg::eigen::clusters_of_sorted;
use crate::linalg::svd::right_singular_pairs;
use crate::linalg::vector::{complete_basis, inner, norm, orthogonalize_against, scale, scale_real, sub};
use crate::linalg::{eig_hermitian, operator_norm, Matrix, C64, ONE, ZERO};
use crate::order::leq;
use crate::projpolar::Projection;
use crate::random;

/// Incrementally built orthonormal basis of a subspace of `M_n`.
#[derive(Debug, Clone)]
struct SpanBuilder {
    n: usize,
    vectors: Vec<Vec<C64>>,
    rel_tol: f64,
}

impl SpanBuilder {
    fn new(n: usize, rel_tol: f64) -> Self {
        SpanBuilder { n, vectors: Vec::new(), rel_tol }
    }

    /// Adds `m` if its distance to the span exceeds `rel_tol·‖m‖_F`.
    fn try_add(&mut self, m: &Matrix) -> bool {
        let size = m.frobenius_norm();
        if size == 0.0 || self.vectors.len() == self.n * self.n {
            return false;
        }
        let mut v = m.data().to_vec();
        orthogonalize_against(&mut v, &self.vectors);
        let r = norm(&v);
        if r > self.rel_tol * size {
            self.vectors.push(scale_real(&v, 1.0 / r));
            true
        } else {
            false
        }
    }

    fn dim(&self) -> usize {
        self.vectors.len()
    }

    fn matrices(&self) -> Vec<Matrix> {
        self.vectors.iter().map(|v| Matrix::new(self.n, v.clone()).expect("n² entries")).collect()
    }
}

fn coefficients(basis: &[Matrix], m: &Matrix) -> Vec<C64> {
    basis.iter().map(|b| m.trace_inner(b)).collect()
}

fn residual_from_span(basis: &[Matrix], m: &Matrix) -> f64 {
    let mut v = m.data().to_vec();
    let vecs: Vec<Vec<C64>> = basis.iter().map(|b| b.data().to_vec()).collect();
    orthogonalize_against(&mut v, &vecs);
    norm(&v)
}

/// A subspace of `M_n` with a trace-orthonormal basis.
#[derive(Debug, Clone)]
pub struct MatrixSpan {
    n: usize,
    basis: Vec<Matrix>,
}

impl MatrixSpan {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Frobenius distance from `m` to the span.
    pub fn residual(&self, m: &Matrix) -> f64 {
        residual_from_span(&self.basis, m)
    }

    pub fn contains(&self, m: &Matrix, cfg: &ToleranceConfig) -> bool {
        self.residual(m) <= cfg.rank_tol * m.frobenius_norm().max(f64::MIN_POSITIVE)
    }
}

/// A *-closed subalgebra of `M_n` given by a trace-orthonormal basis.
#[derive(Debug, Clone)]
pub struct StarAlgebra {
    span: MatrixSpan,
    unital: bool,
}

impl Serialize for StarAlgebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            basis: &'a [Matrix],
        }
        Repr { n: self.span.n, basis: &self.span.basis }.serialize(serializer)
    }
}

impl StarAlgebra {
    fn from_builder(builder: &SpanBuilder, cfg: &ToleranceConfig) -> Self {
        let span = MatrixSpan { n: builder.n, basis: builder.matrices() };
        let unital = span.contains(&Matrix::identity(builder.n), cfg);
        StarAlgebra { span, unital }
    }

    /// `M_n` with the matrix units as basis.
    pub fn full(n: usize) -> Self {
        let basis = (0..n).flat_map(|i| (0..n).map(move |j| Matrix::unit(n, i, j))).collect();
        StarAlgebra { span: MatrixSpan { n, basis }, unital: true }
    }

    /// `ℂ·1`.
    pub fn scalars(n: usize) -> Self {
        let basis = vec![Matrix::identity(n).scale_real(1.0 / (n as f64).sqrt())];
        StarAlgebra { span: MatrixSpan { n, basis }, unital: true }
    }

    /// Diagonal matrices.
    pub fn diagonal(n: usize) -> Self {
        let basis = (0..n).map(|i| Matrix::unit(n, i, i)).collect();
        StarAlgebra { span: MatrixSpan { n, basis }, unital: true }
    }

    pub fn n(&self) -> usize {
        self.span.n
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.span.basis
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn residual(&self, m: &Matrix) -> f64 {
        self.span.residual(m)
    }

    pub fn contains(&self, m: &Matrix, cfg: &ToleranceConfig) -> bool {
        self.span.contains(m, cfg)
    }

    /// Mutual span inclusion.
    pub fn same_span(&self, other: &StarAlgebra, cfg: &ToleranceConfig) -> bool {
        self.dim() == other.dim()
            && self.basis().iter().all(|b| other.contains(b, cfg))
            && other.basis().iter().all(|b| self.contains(b, cfg))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &StarAlgebra, cfg: &ToleranceConfig) -> bool {
        self.basis().iter().all(|b| other.contains(b, cfg))
    }

    /// Largest commutator defect between basis elements.
    pub fn commutativity_defect(&self) -> f64 {
        let basis = self.basis();
        let mut worst: f64 = 0.0;
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                worst = worst.max(x.commutator(y).frobenius_norm());
            }
        }
        worst
    }
}

fn check_dims(n: usize, mats: &[Matrix]) -> Result<()> {
    match mats.iter().find(|m| m.dim() != n) {
        Some(m) => Err(OpError::DimensionMismatch { expected: n, actual: m.dim() }),
        None => Ok(()),
    }
}

/// Closes `span(S)` under multiplication until the dimension stabilizes.
fn close_under_products(builder: &mut SpanBuilder) -> Result<()> {
    let n = builder.n;
    for _ in 0..=n * n {
        let current = builder.matrices();
        let before = builder.dim();
        for x in &current {
            for y in &current {
                builder.try_add(&(x * y));
            }
        }
        if builder.dim() == before {
            return Ok(());
        }
    }
    Err(OpError::NoConvergence("subalgebra closure did not stabilize"))
}

/// The *-subalgebra generated by `gens` (without adjoining the identity).
pub fn generate_star_algebra(gens: &[Matrix], cfg: &ToleranceConfig) -> Result<StarAlgebra> {
    let n = gens.first().ok_or_else(|| OpError::InvalidInput("no generators given".into()))?.dim();
    check_dims(n, gens)?;
    let mut builder = SpanBuilder::new(n, cfg.rank_tol);
    for g in gens {
        builder.try_add(g);
        builder.try_add(&g.adjoint());
    }
    close_under_products(&mut builder)?;
    Ok(StarAlgebra::from_builder(&builder, cfg))
}

/// The linear map `T ↦ TA − AT` on row-major `vec(T)`.
fn commutator_operator(a: &Matrix) -> Matrix {
    let n = a.dim();
    let mut k = Matrix::zeros(n * n);
    for r in 0..n {
        for c in 0..n {
            let row = r * n + c;
            for m in 0..n {
                k[(row, r * n + m)] += a[(m, c)];
                k[(row, m * n + c)] -= a[(r, m)];
            }
        }
    }
    k
}

/// Matrices commuting with every element of `set`, as the numerical null space
/// of the stacked commutator system.
pub fn commutant_of(n: usize, set: &[Matrix], cfg: &ToleranceConfig) -> Result<StarAlgebra> {
    check_dims(n, set)?;
    let ops: Vec<Matrix> = set.iter().map(commutator_operator).collect();
    let mut gram = Matrix::zeros(n * n);
    for k in &ops {
        gram = &gram + &(&k.adjoint() * k);
    }
    let gram = gram.hermitize();
    let pairs = right_singular_pairs(&gram, |v| ops.iter().map(|k| norm(&k.apply(v)).powi(2)).sum(), cfg)?;
    // ‖[x, ·]‖ ≤ 2‖x‖_F, so the cutoff follows the size of the set rather
    // than the largest singular value, which is pure rounding for scalars
    let size = 2.0 * set.iter().map(|x| x.frobenius_norm().powi(2)).sum::<f64>().sqrt();
    let mut builder = SpanBuilder::new(n, 0.5);
    for (_, v) in pairs.into_iter().filter(|p| p.0 <= cfg.rank_tol * size) {
        builder.try_add(&Matrix::new(n, v)?);
    }
    Ok(StarAlgebra::from_builder(&builder, cfg))
}

pub fn commutant(alg: &StarAlgebra, cfg: &ToleranceConfig) -> Result<StarAlgebra> {
    commutant_of(alg.n(), alg.basis(), cfg)
}

/// Comparison of an algebra with its bicommutant.
#[derive(Debug, Clone, Serialize)]
pub struct BicommutantReport {
    pub holds: bool,
    pub dim: usize,
    pub bicommutant_dim: usize,
    /// Largest distance from a basis element of either side to the other span.
    pub max_residual: f64,
}

/// Whether `A'' = A` for a unital *-subalgebra.
pub fn bicommutant_check(alg: &StarAlgebra, cfg: &ToleranceConfig) -> Result<BicommutantReport> {
    if !alg.is_unital() {
        return Err(OpError::NotUnital);
    }
    let double = commutant(&commutant(alg, cfg)?, cfg)?;
    let forward = alg.basis().iter().map(|b| double.residual(b));
    let backward = double.basis().iter().map(|b| alg.residual(b));
    let max_residual = forward.chain(backward).fold(0.0, f64::max);
    Ok(BicommutantReport {
        holds: alg.dim() == double.dim() && max_residual <= cfg.rank_tol,
        dim: alg.dim(),
        bicommutant_dim: double.dim(),
        max_residual,
    })
}

/// Two-sided ideal of `alg` generated by `t`: the span of `t`, `at`, `tb`
/// and `atb` over basis elements, closed until stable.
pub fn ideal_generated(alg: &StarAlgebra, t: &Matrix, cfg: &ToleranceConfig) -> Result<MatrixSpan> {
    let n = alg.n();
    check_dims(n, std::slice::from_ref(t))?;
    if t.frobenius_norm() == 0.0 {
        return Err(OpError::ZeroElement);
    }
    if !alg.contains(t, cfg) {
        return Err(OpError::NotMember { residual: alg.residual(t) });
    }
    let mut builder = SpanBuilder::new(n, cfg.rank_tol);
    builder.try_add(t);
    for _ in 0..=n * n {
        let before = builder.dim();
        for x in builder.matrices() {
            for a in alg.basis() {
                let ax = a * &x;
                builder.try_add(&ax);
                builder.try_add(&(&x * a));
                for b in alg.basis() {
                    builder.try_add(&(&ax * b));
                }
            }
        }
        if builder.dim() == before {
            return Ok(MatrixSpan { n, basis: builder.matrices() });
        }
    }
    Err(OpError::NoConvergence("ideal closure did not stabilize"))
}

/// Sampled evidence that a corner is hereditary.
///
/// Candidates `b` are drawn around `0 ≤ b ≤ a` for random positive `a` in
/// the corner, some deliberately perturbed off it; every candidate that
/// passes the order test must satisfy `b = pbp`.
#[derive(Debug, Clone, Serialize)]
pub struct HereditaryCertificate {
    pub samples: usize,
    pub accepted: usize,
    pub max_defect: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Corner {
    pub algebra: StarAlgebra,
    pub hereditary: HereditaryCertificate,
}

const CORNER_SAMPLES: usize = 50;

/// The corner `pM_np` with a sampled hereditary certificate.
pub fn corner(p: &Projection, cfg: &ToleranceConfig) -> Result<Corner> {
    let n = p.dim();
    let pm = p.matrix();
    let mut builder = SpanBuilder::new(n, cfg.rank_tol);
    for i in 0..n {
        for j in 0..n {
            builder.try_add(&(&(pm * &Matrix::unit(n, i, j)) * pm));
        }
    }
    let algebra = StarAlgebra::from_builder(&builder, cfg);

    let mut rng = random::rng(cfg.seed);
    let mut accepted = 0;
    let mut max_defect: f64 = 0.0;
    for k in 0..CORNER_SAMPLES {
        let c = random::matrix(&mut rng, n);
        let a = (&(pm * &c) * &(&c.adjoint() * pm)).hermitize();
        let root = matrix_power(&a, 0.5, cfg)?;
        let w = random::positive(&mut rng, n, n);
        let w = w.scale_real(1.0 / operator_norm(&w).max(f64::MIN_POSITIVE));
        let mut b = (&(&root * &w) * &root).hermitize();
        if k % 2 == 1 {
            b = &b + &random::positive(&mut rng, n, 1).scale_real(0.1);
        }
        let positive = leq(&Matrix::zeros(n), &b, cfg)?;
        if positive && leq(&b, &a, cfg)? {
            accepted += 1;
            let defect = (&(pm * &b) * pm).distance(&b) / (1.0 + b.frobenius_norm());
            max_defect = max_defect.max(defect);
        }
    }
    Ok(Corner {
        algebra,
        hereditary: HereditaryCertificate { samples: CORNER_SAMPLES, accepted, max_defect, holds: max_defect <= 1e-8 },
    })
}

/// An element `x + λ·1` of the unitization `A ⊕ ℂ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitized {
    pub x: Matrix,
    pub lambda: C64,
}

impl Unitized {
    pub fn new(x: Matrix, lambda: C64) -> Self {
        Unitized { x, lambda }
    }

    pub fn unit(n: usize) -> Self {
        Unitized { x: Matrix::zeros(n), lambda: ONE }
    }

    pub fn embed(x: Matrix) -> Self {
        Unitized { x, lambda: ZERO }
    }

    /// `(x, λ)(y, μ) = (xy + λy + μx, λμ)`.
    pub fn mul(&self, other: &Unitized) -> Unitized {
        let x = &(&(&self.x * &other.x) + &other.x.scale(self.lambda)) + &self.x.scale(other.lambda);
        Unitized { x, lambda: self.lambda * other.lambda }
    }

    pub fn adjoint(&self) -> Unitized {
        Unitized { x: self.x.adjoint(), lambda: self.lambda.conj() }
    }

    /// `‖x‖ + |λ|`.
    pub fn banach_norm(&self) -> f64 {
        operator_norm(&self.x) + self.lambda.norm()
    }

    /// `max(‖x + λ·1‖, |λ|)`, the norm of `A ⊕ ℂ` as a direct sum.
    pub fn cstar_norm(&self) -> f64 {
        operator_norm(&self.x.shift(self.lambda)).max(self.lambda.norm())
    }
}

/// Both sides of the C*-identity `‖z*z‖ = ‖z‖²` under one norm.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CstarIdentity {
    pub norm_squared: f64,
    pub star_product_norm: f64,
    pub defect: f64,
}

fn cstar_identity(z: &Unitized, norm: impl Fn(&Unitized) -> f64) -> CstarIdentity {
    let norm_squared = norm(z).powi(2);
    let star_product_norm = norm(&z.adjoint().mul(z));
    CstarIdentity { norm_squared, star_product_norm, defect: (star_product_norm - norm_squared).abs() }
}

/// The C*-identity under the `‖x‖ + |λ|` norm and the direct-sum max norm.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct UnitizationReport {
    pub banach: CstarIdentity,
    pub cstar: CstarIdentity,
}

pub fn unitization_report(z: &Unitized) -> UnitizationReport {
    UnitizationReport { banach: cstar_identity(z, Unitized::banach_norm), cstar: cstar_identity(z, Unitized::cstar_norm) }
}

/// `diag(a, b)`.
pub fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::block_diag(&[a, b])
}

/// A linear map on `M_n`, stored as its `n² × n²` matrix on row-major `vec`.
#[derive(Debug, Clone)]
pub struct LinearMap {
    n: usize,
    matrix: Matrix,
}

impl LinearMap {
    pub fn from_fn(n: usize, f: impl Fn(&Matrix) -> Matrix) -> Self {
        let mut matrix = Matrix::zeros(n * n);
        for i in 0..n {
            for j in 0..n {
                let image = f(&Matrix::unit(n, i, j));
                for (row, value) in image.data().iter().enumerate() {
                    matrix[(row, i * n + j)] = *value;
                }
            }
        }
        LinearMap { n, matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { n, matrix: Matrix::identity(n * n) }
    }

    /// `x ↦ cx`.
    pub fn left_multiplication(c: &Matrix) -> Self {
        LinearMap::from_fn(c.dim(), |x| c * x)
    }

    /// `x ↦ xc`.
    pub fn right_multiplication(c: &Matrix) -> Self {
        LinearMap::from_fn(c.dim(), |x| x * c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, x: &Matrix) -> Matrix {
        Matrix::new(self.n, self.matrix.apply(x.data())).expect("n² entries")
    }

    /// Operator norm for the Frobenius norm on `M_n`.
    pub fn norm(&self) -> f64 {
        operator_norm(&self.matrix)
    }
}

/// Recovers `c` from a double centralizer `(L, R) = (L_c, R_c)` as `c = L(1)`.
pub fn multiplier_recover(left: &LinearMap, right: &LinearMap, _cfg: &ToleranceConfig) -> Result<Matrix> {
    let n = left.n;
    if right.n != n {
        return Err(OpError::DimensionMismatch { expected: n, actual: right.n });
    }
    let tol = 1e-8 * (1.0 + left.matrix.frobenius_norm() + right.matrix.frobenius_norm());
    let units: Vec<Matrix> = (0..n).flat_map(|i| (0..n).map(move |j| Matrix::unit(n, i, j))).collect();
    let l_units: Vec<Matrix> = units.iter().map(|e| left.apply(e)).collect();
    let r_units: Vec<Matrix> = units.iter().map(|e| right.apply(e)).collect();
    let mut defect: f64 = 0.0;
    for (ia, a) in units.iter().enumerate() {
        for (ib, b) in units.iter().enumerate() {
            let ab = a * b;
            defect = defect.max(left.apply(&ab).distance(&(&l_units[ia] * b)));
            defect = defect.max(right.apply(&ab).distance(&(a * &r_units[ib])));
            defect = defect.max((&r_units[ia] * b).distance(&(a * &l_units[ib])));
        }
    }
    if defect > tol {
        return Err(OpError::NotDoubleCentralizer { defect });
    }
    let c = left.apply(&Matrix::identity(n));
    for (k, e) in units.iter().enumerate() {
        defect = defect.max(l_units[k].distance(&(&c * e))).max(r_units[k].distance(&(e * &c)));
    }
    if defect > tol {
        return Err(OpError::NotDoubleCentralizer { defect });
    }
    Ok(c)
}

/// A character of a commutative algebra, stored by its values on the basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Character {
    pub values: Vec<C64>,
}

impl Character {
    /// `ω(a)` for `a` in the algebra, through its basis coefficients.
    pub fn apply(&self, alg: &StarAlgebra, a: &Matrix) -> C64 {
        coefficients(alg.basis(), a).iter().zip(&self.values).map(|(c, w)| c * w).sum()
    }
}

const SEPARATION_ATTEMPTS: usize = 8;

/// Random Hermitian combination of the real and imaginary parts of `basis`.
fn generic_hermitian(basis: &[Matrix], rng: &mut random::SeededRng) -> Matrix {
    use rand::Rng;
    let n = basis[0].dim();
    let mut h = Matrix::zeros(n);
    for b in basis {
        let c: f64 = rng.random_range(-1.0..1.0);
        let d: f64 = rng.random_range(-1.0..1.0);
        h = &h + &(&b.real_part().scale_real(c) + &b.imag_part().scale_real(d));
    }
    h.hermitize()
}

/// Splits `span(cols)` (orthonormal) into eigenspaces of `h` compressed to it.
fn refine(cols: &[Vec<C64>], h: &Matrix, cfg: &ToleranceConfig) -> Result<Vec<Vec<Vec<C64>>>> {
    let k = cols.len();
    if k == 1 {
        return Ok(vec![cols.to_vec()]);
    }
    let restricted = Matrix::from_fn(k, |i, j| inner(&h.apply(&cols[j]), &cols[i]));
    let eig = eig_hermitian(&restricted.hermitize(), cfg)?;
    let values = eig.real_values();
    let gap = 1e-7 * (1.0 + h.frobenius_norm());
    Ok(clusters_of_sorted(&values, gap)
        .into_iter()
        .map(|range| {
            range
                .map(|idx| {
                    let coeffs = eig.vectors.column(idx);
                    let n = cols[0].len();
                    (0..n).map(|r| (0..k).map(|s| cols[s][r] * coeffs[s]).sum()).collect()
                })
                .collect()
        })
        .collect())
}

/// Joint eigenspaces of the basis, or `None` if the draw failed to separate.
fn try_joint_eigenspaces(
    alg: &StarAlgebra,
    rng: &mut random::SeededRng,
    cfg: &ToleranceConfig,
) -> Result<Option<Vec<Character>>> {
    let n = alg.n();
    let basis = alg.basis();
    let h1 = generic_hermitian(basis, rng);
    let h2 = generic_hermitian(basis, rng);
    let all: Vec<Vec<C64>> = complete_basis(n, &[]);
    let mut spaces = Vec::new();
    for cluster in refine(&all, &h1, cfg)? {
        spaces.extend(refine(&cluster, &h2, cfg)?);
    }
    let size = 1.0 + basis.iter().map(|b| b.frobenius_norm()).fold(0.0, f64::max);
    let mut chars: Vec<Character> = Vec::new();
    for space in &spaces {
        let mut values = Vec::with_capacity(basis.len());
        for b in basis {
            let w = &space[0];
            let value = inner(&b.apply(w), w);
            for v in space {
                let bv = b.apply(v);
                let defect = norm(&sub(&bv, &scale(v, value)));
                if defect > 1e-8 * size {
                    return Ok(None);
                }
            }
            values.push(value);
        }
        let character = Character { values };
        let duplicate = chars.iter().any(|c| {
            c.values.iter().zip(&character.values).all(|(x, y)| (x - y).norm() <= 1e-8 * size)
        });
        if !duplicate {
            chars.push(character);
        }
    }
    if chars.len() != alg.dim() {
        return Ok(None);
    }
    Ok(Some(chars))
}

/// Characters of a commutative unital *-subalgebra by simultaneous
/// diagonalization of its basis.
pub fn characters(alg: &StarAlgebra, cfg: &ToleranceConfig) -> Result<Vec<Character>> {
    let defect = alg.commutativity_defect();
    if defect > 1e-8 {
        return Err(OpError::NotCommutative { defect });
    }
    if !alg.is_unital() {
        return Err(OpError::NotUnital);
    }
    let mut rng = random::rng(cfg.seed);
    for _ in 0..SEPARATION_ATTEMPTS {
        if let Some(mut chars) = try_joint_eigenspaces(alg, &mut rng, cfg)? {
            chars.sort_by(|x, y| {
                for (a, b) in x.values.iter().zip(&y.values) {
                    let ord = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
                std::cmp::Ordering::Equal
            });
            return Ok(chars);
        }
    }
    Err(OpError::DegenerateSeparation { attempts: SEPARATION_ATTEMPTS })
}

/// `â = (ω(a))_ω` over the given characters.
pub fn gelfand_transform(
    alg: &StarAlgebra,
    chars: &[Character],
    a: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<Vec<C64>> {
    if a.dim() != alg.n() {
        return Err(OpError::DimensionMismatch { expected: alg.n(), actual: a.dim() });
    }
    if !alg.contains(a, cfg) {
        return Err(OpError::NotMember { residual: alg.residual(a) });
    }
    Ok(chars.iter().map(|w| w.apply(alg, a)).collect())
}

/// `diag(t, …, t)` with `k` copies.
pub fn amplify(t: &Matrix, k: usize) -> Result<Matrix> {
    if k == 0 {
        return Err(OpError::InvalidInput("amplification factor must be at least 1".into()));
    }
    Ok(Matrix::block_diag(&vec![t; k]))
}
