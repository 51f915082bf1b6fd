use super::eigen::jacobi;
use super::matrix::{Matrix, C64};
use super::vector::{complete_basis, norm, orthogonalize_against, scale_real};
use crate::config::ToleranceConfig;
use crate::error::Result;

/// `a = U·diag(s)·V*` with `s` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub s: Vec<f64>,
    pub v: Matrix,
}

impl Svd {
    /// Count of singular values above `rank_tol·σ_max`; zero for the zero matrix.
    pub fn rank(&self, cfg: &ToleranceConfig) -> usize {
        numerical_rank(&self.s, cfg)
    }

    pub fn reconstruct(&self) -> Matrix {
        let n = self.u.dim();
        Matrix::from_fn(n, |i, j| (0..n).map(|k| self.u[(i, k)] * self.s[k] * self.v[(j, k)].conj()).sum())
    }
}

pub fn numerical_rank(s: &[f64], cfg: &ToleranceConfig) -> usize {
    let smax = s.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > cfg.rank_tol * smax).count()
}

/// Right singular vectors of a linear map given through its Gram matrix.
///
/// Eigenvectors come from the Gram matrix; the singular values are recomputed
/// as `sqrt(residual_sq(v))`, which keeps small singular values accurate well
/// below the `sqrt(ε)` floor of the Gram eigenvalues. Pairs are returned in
/// descending order of singular value.
pub(crate) fn right_singular_pairs(
    gram: &Matrix,
    residual_sq: impl Fn(&[C64]) -> f64,
    cfg: &ToleranceConfig,
) -> Result<Vec<(f64, Vec<C64>)>> {
    let (_, vectors) = jacobi(gram, cfg)?;
    let mut pairs: Vec<(f64, Vec<C64>)> = vectors
        .columns()
        .into_iter()
        .map(|v| (residual_sq(&v).max(0.0).sqrt(), v))
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    Ok(pairs)
}

/// Singular value decomposition via the Hermitian eigenproblem of `a*a`.
pub fn svd(a: &Matrix, cfg: &ToleranceConfig) -> Result<Svd> {
    let n = a.dim();
    let gram = &a.adjoint() * a;
    let pairs = right_singular_pairs(&gram, |v| norm(&a.apply(v)).powi(2), cfg)?;
    let s: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let v_cols: Vec<Vec<C64>> = pairs.into_iter().map(|p| p.1).collect();

    let mut accepted: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut slots: Vec<Option<usize>> = Vec::with_capacity(n);
    for (k, vk) in v_cols.iter().enumerate() {
        if s[k] == 0.0 {
            slots.push(None);
            continue;
        }
        let mut u = scale_real(&a.apply(vk), 1.0 / s[k]);
        orthogonalize_against(&mut u, &accepted);
        let r = norm(&u);
        if r > 0.5 {
            accepted.push(scale_real(&u, 1.0 / r));
            slots.push(Some(accepted.len() - 1));
        } else {
            slots.push(None);
        }
    }
    let full = complete_basis(n, &accepted);
    let mut extra = full[accepted.len()..].iter();
    let u_cols: Vec<Vec<C64>> = slots
        .iter()
        .map(|slot| match slot {
            Some(idx) => accepted[*idx].clone(),
            None => extra.next().expect("basis completion").clone(),
        })
        .collect();
    Ok(Svd { u: Matrix::from_columns(n, &u_cols), s, v: Matrix::from_columns(n, &v_cols) })
}

/// Largest singular value.
pub fn operator_norm(a: &Matrix) -> f64 {
    if a.dim() == 1 {
        return a[(0, 0)].norm();
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    // scaling keeps the Gram matrix clear of overflow and underflow
    let b = a.scale_real(1.0 / scale);
    let gram = &b.adjoint() * &b;
    let cfg = ToleranceConfig::default();
    match jacobi(&gram, &cfg) {
        Ok((values, vectors)) => {
            let top = vectors.column(values.len() - 1);
            let via_vector = norm(&b.apply(&top));
            via_vector.max(values[values.len() - 1].max(0.0).sqrt()) * scale
        }
        // Jacobi with 100 sweeps does not fail on bounded Hermitian input in
        // practice; fall back on the Frobenius bound if it ever does.
        Err(_) => a.frobenius_norm(),
    }
}

/// Orthonormal basis of the numerical null space.
pub fn nullspace(a: &Matrix, cfg: &ToleranceConfig) -> Result<Vec<Vec<C64>>> {
    let d = svd(a, cfg)?;
    let r = d.rank(cfg);
    Ok((r..a.dim()).map(|k| d.v.column(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::inner;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(operator_norm(&Matrix::zeros(3)), 0.0);
        assert!((operator_norm(&Matrix::from_real_diag(&[3.0, -4.0])) - 4.0).abs() < 1e-14);
        // char. polynomial t² − t − 1 of the Hermitian matrix
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let a = Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 1.0]]);
        assert!((operator_norm(&a) - golden).abs() < 1e-14);
    }

    #[test]
    fn svd_examples() {
        let d = svd(&Matrix::identity(3), &cfg()).unwrap();
        assert_eq!(d.s, vec![1.0; 3]);
        let d = svd(&Matrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]), &cfg()).unwrap();
        assert!((d.s[0] - 2.0).abs() < 1e-15 && d.s[1].abs() < 1e-15);
        let d = svd(&Matrix::from_real_diag(&[3.0, -4.0]), &cfg()).unwrap();
        assert!((d.s[0] - 4.0).abs() < 1e-14 && (d.s[1] - 3.0).abs() < 1e-14);
        let a = Matrix::from_real_diag(&[3.0, -4.0]);
        assert!(d.reconstruct().distance(&a) < 1e-13);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let d = svd(&Matrix::zeros(2), &cfg()).unwrap();
        assert_eq!(d.rank(&cfg()), 0);
        assert!(d.reconstruct().frobenius_norm() == 0.0);
        let u = &d.u;
        assert!((&u.adjoint() * u).approx_eq(&Matrix::identity(2), 1e-14));
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&Matrix::identity(3), &cfg()).unwrap().is_empty());
        assert_eq!(nullspace(&Matrix::zeros(2), &cfg()).unwrap().len(), 2);
        // E₁₂x = x₂e₁ vanishes exactly on span(e₁)
        let ns = nullspace(&Matrix::unit(2, 0, 1), &cfg()).unwrap();
        assert_eq!(ns.len(), 1);
        assert!((ns[0][0].norm() - 1.0).abs() < 1e-14);
        assert!(ns[0][1].norm() < 1e-14);
        assert!((inner(&ns[0], &ns[0]).re - 1.0).abs() < 1e-14);
    }
}
