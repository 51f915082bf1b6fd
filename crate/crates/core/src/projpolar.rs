//! Orthogonal projections, their lattice, support projections, rank-one
//! operators, partial isometries and the polar decomposition.

use serde::{Serialize, Serializer};

use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};
use crate::linalg::svd::right_singular_pairs;
use crate::linalg::vector::{complete_basis, norm, orthonormalize};
use crate::linalg::{eig_hermitian, svd, Matrix, C64};
use crate::random;

/// An orthogonal projection together with an orthonormal basis of its range.
#[derive(Debug, Clone)]
pub struct Projection {
    matrix: Matrix,
    range_basis: Vec<Vec<C64>>,
    n: usize,
}

impl Serialize for Projection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            rank: usize,
            matrix: &'a Matrix,
        }
        Repr { rank: self.rank(), matrix: &self.matrix }.serialize(serializer)
    }
}

fn outer_sum(n: usize, basis: &[Vec<C64>]) -> Matrix {
    Matrix::from_fn(n, |i, j| basis.iter().map(|v| v[i] * v[j].conj()).sum())
}

impl Projection {
    /// Projection onto the span of an orthonormal family.
    fn from_orthonormal(n: usize, range_basis: Vec<Vec<C64>>) -> Self {
        Projection { matrix: outer_sum(n, &range_basis), range_basis, n }
    }

    pub fn zero(n: usize) -> Self {
        Projection::from_orthonormal(n, Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Projection::from_orthonormal(n, complete_basis(n, &[]))
    }

    /// Accepts a matrix with `p² = p = p*` up to `1e-9·(1 + ‖p‖_F)`.
    pub fn from_matrix(p: &Matrix, cfg: &ToleranceConfig) -> Result<Self> {
        let scale = 1.0 + p.frobenius_norm();
        let defect = ((&(p * p) - p).frobenius_norm() / scale).max(p.hermitian_defect());
        if defect > 1e-9 {
            return Err(OpError::NotProjection { defect });
        }
        let eig = eig_hermitian(&p.hermitize(), cfg)?;
        let basis = eig
            .real_values()
            .iter()
            .enumerate()
            .filter(|(_, &t)| t > 0.5)
            .map(|(k, _)| eig.vectors.column(k))
            .collect();
        Ok(Projection::from_orthonormal(p.dim(), basis))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn range_basis(&self) -> &[Vec<C64>] {
        &self.range_basis
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.range_basis.len()
    }

    /// `1 − p`.
    pub fn complement(&self) -> Projection {
        let full = complete_basis(self.n, &self.range_basis);
        Projection::from_orthonormal(self.n, full[self.rank()..].to_vec())
    }

    /// `p ≤ q`, i.e. `qp = p`.
    pub fn leq(&self, other: &Projection, tol: f64) -> bool {
        (&other.matrix * &self.matrix).distance(&self.matrix) <= tol
    }
}

/// Projection onto `span(columns)`; dependent columns are dropped.
pub fn projection_onto(n: usize, columns: &[Vec<C64>], cfg: &ToleranceConfig) -> Result<Projection> {
    if let Some(bad) = columns.iter().find(|c| c.len() != n) {
        return Err(OpError::DimensionMismatch { expected: n, actual: bad.len() });
    }
    Ok(Projection::from_orthonormal(n, orthonormalize(columns, cfg.rank_tol)))
}

fn require_same_dim(p: &Projection, q: &Projection) -> Result<()> {
    if p.n != q.n {
        return Err(OpError::DimensionMismatch { expected: p.n, actual: q.n });
    }
    Ok(())
}

/// Projection onto `range(p) ∩ range(q)`, the numerical null space of the
/// stacked operator `[(1 − p); (1 − q)]`: unit vectors whose distance to
/// both ranges is at most `rank_tol`.
pub fn meet(p: &Projection, q: &Projection, cfg: &ToleranceConfig) -> Result<Projection> {
    require_same_dim(p, q)?;
    let n = p.n;
    let id = Matrix::identity(n);
    let cp = &id - &p.matrix;
    let cq = &id - &q.matrix;
    let gram = (&cp + &cq).hermitize();
    let pairs = right_singular_pairs(
        &gram,
        |v| norm(&cp.apply(v)).powi(2) + norm(&cq.apply(v)).powi(2),
        cfg,
    )?;
    // the stacked operator has norm between 1 and √2 unless it vanishes, so
    // the cutoff is absolute
    let null: Vec<Vec<C64>> = pairs.into_iter().filter(|x| x.0 <= cfg.rank_tol).map(|x| x.1).collect();
    Ok(Projection::from_orthonormal(n, orthonormalize(&null, 0.5)))
}

/// Projection onto `range(p) + range(q)`.
pub fn join(p: &Projection, q: &Projection, cfg: &ToleranceConfig) -> Result<Projection> {
    require_same_dim(p, q)?;
    let mut all = p.range_basis.clone();
    all.extend(q.range_basis.iter().cloned());
    Ok(Projection::from_orthonormal(p.n, orthonormalize(&all, cfg.rank_tol)))
}

/// Right (row space) and left (range) support projections.
#[derive(Debug, Clone, Serialize)]
pub struct SupportProjections {
    pub right: Projection,
    pub left: Projection,
}

pub fn support_projections(t: &Matrix, cfg: &ToleranceConfig) -> Result<SupportProjections> {
    let d = svd(t, cfg)?;
    let r = d.rank(cfg);
    let n = t.dim();
    Ok(SupportProjections {
        right: Projection::from_orthonormal(n, (0..r).map(|k| d.v.column(k)).collect()),
        left: Projection::from_orthonormal(n, (0..r).map(|k| d.u.column(k)).collect()),
    })
}

/// `x ⊗ y : h ↦ ⟨h, y⟩·x`, the matrix `x·y*`.
pub fn rank_one(x: &[C64], y: &[C64]) -> Result<Matrix> {
    if x.len() != y.len() {
        return Err(OpError::DimensionMismatch { expected: x.len(), actual: y.len() });
    }
    if x.is_empty() {
        return Err(OpError::InvalidInput("vectors must be non-empty".into()));
    }
    Ok(Matrix::from_fn(x.len(), |i, j| x[i] * y[j].conj()))
}

/// `t = u·|t|` with `u` a partial isometry vanishing on the kernel of `t`.
#[derive(Debug, Clone, Serialize)]
pub struct PolarForm {
    pub u: Matrix,
    pub abs: Matrix,
}

pub fn polar_decompose(t: &Matrix, cfg: &ToleranceConfig) -> Result<PolarForm> {
    let d = svd(t, cfg)?;
    let r = d.rank(cfg);
    let n = t.dim();
    let u = Matrix::from_fn(n, |i, j| (0..r).map(|k| d.u[(i, k)] * d.v[(j, k)].conj()).sum());
    let abs = Matrix::from_fn(n, |i, j| (0..n).map(|k| d.v[(i, k)] * d.s[k] * d.v[(j, k)].conj()).sum());
    Ok(PolarForm { u, abs })
}

/// Defects of the four equivalent partial-isometry conditions, in order:
/// `t*t` idempotent, `tt*` idempotent, `tt*t = t`, and `t` isometric on the
/// orthogonal complement of its kernel (sampled).
pub fn partial_isometry_defects(t: &Matrix, cfg: &ToleranceConfig) -> Result<[f64; 4]> {
    let tt = &t.adjoint() * t;
    let t_t = t * &t.adjoint();
    let idempotence = |m: &Matrix| (&(m * m) - m).frobenius_norm() / (1.0 + m.frobenius_norm());
    let d3 = (&(&t_t * t) - t).frobenius_norm() / (1.0 + t.frobenius_norm());

    let support = support_projections(t, cfg)?.right;
    let mut samples: Vec<Vec<C64>> = support.range_basis.clone();
    let mut rng = random::rng(cfg.seed);
    for _ in 0..32 {
        samples.push(support.matrix.apply(&random::unit_vector(&mut rng, t.dim())));
    }
    let d4 = samples
        .iter()
        .filter(|x| norm(x) > 1e-6)
        .map(|x| (norm(&t.apply(x)) - norm(x)).abs() / norm(x))
        .fold(0.0, f64::max);
    Ok([idempotence(&tt), idempotence(&t_t), d3, d4])
}

/// Common verdict of the four partial-isometry conditions at threshold
/// `rank_tol`; disagreement is reported as an error.
pub fn is_partial_isometry(t: &Matrix, cfg: &ToleranceConfig) -> Result<bool> {
    let defects = partial_isometry_defects(t, cfg)?;
    let verdicts: Vec<bool> = defects.iter().map(|&d| d <= cfg.rank_tol).collect();
    if verdicts.iter().all(|&v| v == verdicts[0]) {
        Ok(verdicts[0])
    } else {
        Err(OpError::InconsistentPredicates(format!("partial isometry defects {defects:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::basis_vector;
    use crate::linalg::{ONE, ZERO};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn e(n: usize, k: usize) -> Vec<C64> {
        basis_vector(n, k)
    }

    fn line(v: &[f64]) -> Projection {
        let col: Vec<C64> = v.iter().map(|&x| C64::new(x, 0.0)).collect();
        projection_onto(v.len(), &[col], &cfg()).unwrap()
    }

    #[test]
    fn projection_examples() {
        let p = projection_onto(2, &[e(2, 0)], &cfg()).unwrap();
        assert!(p.matrix().approx_eq(&Matrix::unit(2, 0, 0), 1e-15));
        let p = line(&[1.0, 1.0]);
        assert!(p.matrix().approx_eq(&Matrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]), 1e-15));
        let p = projection_onto(3, &[e(3, 0), e(3, 1), e(3, 2), e(3, 1)], &cfg()).unwrap();
        assert_eq!(p.rank(), 3);
        assert!(p.matrix().approx_eq(&Matrix::identity(3), 1e-15));
    }

    #[test]
    fn lattice_examples() {
        let p = line(&[1.0, 0.0]);
        let q = line(&[0.0, 1.0]);
        assert_eq!(meet(&p, &q, &cfg()).unwrap().rank(), 0);
        assert!(join(&p, &q, &cfg()).unwrap().matrix().approx_eq(&Matrix::identity(2), 1e-14));
        let m = meet(&p, &p, &cfg()).unwrap();
        assert!(m.matrix().approx_eq(p.matrix(), 1e-12));
        let diagonal = line(&[1.0, 1.0]);
        assert_eq!(meet(&p, &diagonal, &cfg()).unwrap().rank(), 0);
        assert!(join(&p, &diagonal, &cfg()).unwrap().matrix().approx_eq(&Matrix::identity(2), 1e-14));
    }

    #[test]
    fn meet_of_planes_is_their_common_line() {
        let xy = projection_onto(3, &[e(3, 0), e(3, 1)], &cfg()).unwrap();
        let yz = projection_onto(3, &[e(3, 1), e(3, 2)], &cfg()).unwrap();
        let m = meet(&xy, &yz, &cfg()).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.matrix().approx_eq(&Matrix::unit(3, 1, 1), 1e-12));
    }

    #[test]
    fn from_matrix_checks_idempotence() {
        let p = Projection::from_matrix(&Matrix::unit(2, 1, 1), &cfg()).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.complement().matrix().approx_eq(&Matrix::unit(2, 0, 0), 1e-15));
        let err = Projection::from_matrix(&Matrix::from_real_diag(&[2.0, 0.0]), &cfg()).unwrap_err();
        assert!(matches!(err, OpError::NotProjection { .. }));
    }

    #[test]
    fn support_examples() {
        let s = support_projections(&Matrix::identity(2), &cfg()).unwrap();
        assert!(s.right.matrix().approx_eq(&Matrix::identity(2), 1e-14));
        assert!(s.left.matrix().approx_eq(&Matrix::identity(2), 1e-14));
        let s = support_projections(&Matrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]), &cfg()).unwrap();
        assert!(s.right.matrix().approx_eq(&Matrix::unit(2, 1, 1), 1e-14));
        assert!(s.left.matrix().approx_eq(&Matrix::unit(2, 0, 0), 1e-14));
    }

    #[test]
    fn rank_one_examples() {
        assert!(rank_one(&e(2, 0), &e(2, 1)).unwrap().approx_eq(&Matrix::unit(2, 0, 1), 0.0));
        let s = 0.5f64.sqrt();
        let x = vec![C64::new(s, 0.0), C64::new(0.0, s)];
        let p = rank_one(&x, &x).unwrap();
        assert!((&p * &p).approx_eq(&p, 1e-15) && p.is_hermitian(1e-15));
        assert_eq!(rank_one(&[ZERO, ZERO], &x).unwrap(), Matrix::zeros(2));
        assert!(matches!(rank_one(&x, &[ONE]), Err(OpError::DimensionMismatch { .. })));
    }

    #[test]
    fn rank_one_composition_coefficient() {
        // (x⊗y)(x'⊗y') h = ⟨h, y'⟩⟨x', y⟩ x, so the coefficient is ⟨x', y⟩
        let x = vec![ONE, C64::new(0.0, 2.0)];
        let y = vec![C64::new(1.0, 1.0), C64::new(0.5, 0.0)];
        let xp = vec![C64::new(0.0, 1.0), C64::new(3.0, 0.0)];
        let yp = vec![C64::new(2.0, -1.0), ONE];
        let lhs = &rank_one(&x, &y).unwrap() * &rank_one(&xp, &yp).unwrap();
        let coeff = crate::linalg::vector::inner(&xp, &y);
        assert!(lhs.approx_eq(&rank_one(&x, &yp).unwrap().scale(coeff), 1e-14));
        // the conjugate coefficient ⟨y, x'⟩ does not reproduce it here
        assert!(!lhs.approx_eq(&rank_one(&x, &yp).unwrap().scale(coeff.conj()), 1e-6));
    }

    #[test]
    fn polar_examples() {
        let theta = 0.7_f64;
        let rot = Matrix::from_real_rows(&[[theta.cos(), -theta.sin()], [theta.sin(), theta.cos()]]);
        let p = polar_decompose(&rot, &cfg()).unwrap();
        assert!(p.u.approx_eq(&rot, 1e-14) && p.abs.approx_eq(&Matrix::identity(2), 1e-14));
        let p = polar_decompose(&Matrix::from_real_diag(&[2.0, 0.0]), &cfg()).unwrap();
        assert!(p.u.approx_eq(&Matrix::from_real_diag(&[1.0, 0.0]), 1e-14));
        assert!(p.abs.approx_eq(&Matrix::from_real_diag(&[2.0, 0.0]), 1e-14));
        let p = polar_decompose(&Matrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]), &cfg()).unwrap();
        assert!(p.u.approx_eq(&Matrix::unit(2, 0, 1), 1e-14));
        assert!(p.abs.approx_eq(&Matrix::from_real_diag(&[0.0, 2.0]), 1e-14));
    }

    #[test]
    fn polar_form_serializes_with_two_keys() {
        let p = polar_decompose(&Matrix::identity(1), &cfg()).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert!(v.get("u").is_some() && v.get("abs").is_some());
    }

    #[test]
    fn partial_isometry_examples() {
        let theta = 1.1_f64;
        let rot = Matrix::from_real_rows(&[[theta.cos(), -theta.sin()], [theta.sin(), theta.cos()]]);
        assert!(is_partial_isometry(&rot, &cfg()).unwrap());
        assert!(is_partial_isometry(&Matrix::unit(2, 0, 1), &cfg()).unwrap());
        assert!(!is_partial_isometry(&Matrix::from_real_diag(&[2.0, 0.0]), &cfg()).unwrap());
        assert!(is_partial_isometry(&Matrix::zeros(2), &cfg()).unwrap());
    }
}
