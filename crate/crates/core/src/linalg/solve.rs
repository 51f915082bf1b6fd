use super::matrix::{Matrix, C64, ZERO};
use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};

/// Solves `a·x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot below `rank_tol·max|aᵢⱼ|` is treated as singular, and a solution
/// whose residual exceeds `1e-9·(‖a‖·‖x‖ + ‖b‖)` is rejected the same way.
pub fn solve(a: &Matrix, b: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let n = a.dim();
    if b.dim() != n {
        return Err(OpError::DimensionMismatch { expected: n, actual: b.dim() });
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(OpError::Singular);
    }
    let mut lu: Vec<C64> = a.data().to_vec();
    let mut rhs: Vec<C64> = b.data().to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| lu[i * n + col].norm().total_cmp(&lu[j * n + col].norm()))
            .expect("non-empty range");
        if lu[pivot_row * n + col].norm() <= cfg.rank_tol * scale {
            return Err(OpError::Singular);
        }
        if pivot_row != col {
            for k in 0..n {
                lu.swap(col * n + k, pivot_row * n + k);
                rhs.swap(col * n + k, pivot_row * n + k);
            }
        }
        let pivot = lu[col * n + col];
        for row in (col + 1)..n {
            let factor = lu[row * n + col] / pivot;
            if factor == ZERO {
                continue;
            }
            lu[row * n + col] = ZERO;
            for k in (col + 1)..n {
                let u = lu[col * n + k];
                lu[row * n + k] -= factor * u;
            }
            for k in 0..n {
                let r = rhs[col * n + k];
                rhs[row * n + k] -= factor * r;
            }
        }
    }
    let mut x = vec![ZERO; n * n];
    for row in (0..n).rev() {
        for k in 0..n {
            let mut value = rhs[row * n + k];
            for j in (row + 1)..n {
                value -= lu[row * n + j] * x[j * n + k];
            }
            x[row * n + k] = value / lu[row * n + row];
        }
    }
    let x = Matrix::new(n, x).map_err(|_| OpError::Singular)?;
    let residual = (&(a * &x) - b).frobenius_norm();
    let bound = 1e-9 * (a.frobenius_norm() * x.frobenius_norm() + b.frobenius_norm());
    if residual > bound {
        return Err(OpError::Singular);
    }
    Ok(x)
}

pub fn inverse(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    solve(a, &Matrix::identity(a.dim()), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::I;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let b = Matrix::from_rows(&[[C64::new(1.0, 2.0), I], [ZERO, C64::new(-3.0, 0.5)]]);
        assert_eq!(solve(&Matrix::identity(2), &b, &cfg()).unwrap(), b);
    }

    #[test]
    fn diagonal_inverse() {
        let x = solve(&Matrix::from_real_diag(&[2.0, 4.0]), &Matrix::identity(2), &cfg()).unwrap();
        assert_eq!(x, Matrix::from_real_diag(&[0.5, 0.25]));
    }

    #[test]
    fn singular_is_rejected() {
        let a = Matrix::from_real_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert_eq!(solve(&a, &Matrix::identity(2), &cfg()), Err(OpError::Singular));
        assert_eq!(inverse(&Matrix::zeros(3), &cfg()), Err(OpError::Singular));
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(inverse(&a, &cfg()).unwrap(), a);
    }
}
