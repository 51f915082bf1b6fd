//! Hermitian and normal eigendecompositions.
//!
//! The Hermitian solver is a cyclic Jacobi method. Each rotation zeroes one
//! off-diagonal pair `(p, q)` of the working matrix: a diagonal phase makes
//! `a_pq` real, after which the classical real rotation applies. Real
//! symmetric input takes a pure-`f64` path.
//!
//! Normal matrices are diagonalized through their commuting Hermitian parts:
//! `Re(a)` is diagonalized first and `Im(a)` is then diagonalized inside each
//! eigenvalue cluster of `Re(a)`.

use super::matrix::{Matrix, C64, ZERO};
use super::vector::inner;
use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};

/// Eigenvalues and unit eigenvectors (as columns of `vectors`).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<C64>,
    pub vectors: Matrix,
    /// Whether `vectors` is unitary within `herm_tol·n`.
    pub unitary: bool,
}

impl EigenDecomposition {
    /// `V·diag(f(λ))·V*`.
    pub fn reconstruct_with(&self, mut f: impl FnMut(C64) -> C64) -> Matrix {
        let n = self.vectors.dim();
        let fv: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        Matrix::from_fn(n, |i, j| (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum())
    }

    pub fn reconstruct(&self) -> Matrix {
        self.reconstruct_with(|l| l)
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }
}

fn unitarity_defect(v: &Matrix) -> f64 {
    (&(&v.adjoint() * v) - &Matrix::identity(v.dim())).frobenius_norm()
}

/// Eigendecomposition of a Hermitian matrix; values real and ascending.
pub fn eig_hermitian(a: &Matrix, cfg: &ToleranceConfig) -> Result<EigenDecomposition> {
    let defect = a.hermitian_defect();
    if defect > cfg.herm_tol {
        return Err(OpError::NotHermitian { defect });
    }
    let (values, vectors) = jacobi(a, cfg)?;
    let unitary = unitarity_defect(&vectors) <= cfg.herm_tol * a.dim() as f64;
    Ok(EigenDecomposition {
        values: values.into_iter().map(|x| C64::new(x, 0.0)).collect(),
        vectors,
        unitary,
    })
}

/// Unchecked Jacobi on the Hermitian part of `a`. Values ascending.
pub(crate) fn jacobi(a: &Matrix, cfg: &ToleranceConfig) -> Result<(Vec<f64>, Matrix)> {
    let h = a.hermitize();
    let (values, vectors) = if h.is_real() { jacobi_real(&h, cfg)? } else { jacobi_complex(&h, cfg)? };
    Ok(sort_ascending(values, vectors))
}

fn sort_ascending(values: Vec<f64>, vectors: Matrix) -> (Vec<f64>, Matrix) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted = order.iter().map(|&k| values[k]).collect();
    let v = Matrix::from_fn(n, |i, j| vectors[(i, order[j])]);
    (sorted, v)
}

/// Classical rotation parameters `(c, s)` annihilating a real off-diagonal
/// entry `apq` between diagonal entries `app`, `aqq`.
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c)
}

fn jacobi_real(h: &Matrix, cfg: &ToleranceConfig) -> Result<(Vec<f64>, Matrix)> {
    let n = h.dim();
    let mut a: Vec<f64> = h.data().iter().map(|z| z.re).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let fro = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = cfg.conv_tol * fro;
    let mut converged = false;
    for _sweep in 0..cfg.max_iter {
        let off = off_diagonal_mass(n, |i, j| a[i * n + j] * a[i * n + j]);
        if off <= target || fro == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[p * n + p], a[q * n + q], apq);
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        let off = off_diagonal_mass(n, |i, j| a[i * n + j] * a[i * n + j]);
        if off > target {
            return Err(OpError::NoConvergence("Jacobi eigensolver"));
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    let vectors = Matrix::from_fn(n, |i, j| C64::new(v[i * n + j], 0.0));
    Ok((values, vectors))
}

fn jacobi_complex(h: &Matrix, cfg: &ToleranceConfig) -> Result<(Vec<f64>, Matrix)> {
    let n = h.dim();
    let mut a = h.clone();
    let mut v = Matrix::identity(n);
    let fro = a.frobenius_norm();
    let target = cfg.conv_tol * fro;
    let mut converged = false;
    for _sweep in 0..cfg.max_iter {
        let off = off_diagonal_mass(n, |i, j| a[(i, j)].norm_sqr());
        if off <= target || fro == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[(p, p)].re, a[(q, q)].re, r);
                // U = diag(1, e^{-iφ})·R on the (p, q) plane.
                let phase = (apq / r).conj();
                let upp = C64::new(c, 0.0);
                let upq = C64::new(s, 0.0);
                let uqp = phase * (-s);
                let uqq = phase * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    if !converged {
        let off = off_diagonal_mass(n, |i, j| a[(i, j)].norm_sqr());
        if off > target {
            return Err(OpError::NoConvergence("Jacobi eigensolver"));
        }
    }
    let values = (0..n).map(|i| a[(i, i)].re).collect();
    Ok((values, v))
}

fn off_diagonal_mass(n: usize, sq: impl Fn(usize, usize) -> f64) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += sq(i, j);
            }
        }
    }
    s.sqrt()
}

/// Groups ascending `values` into runs whose consecutive gaps are below `gap`.
pub(crate) fn clusters_of_sorted(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] >= gap {
            if k > start {
                out.push(start..k);
            }
            start = k;
        }
    }
    out
}

/// Unitary diagonalization of a normal matrix.
///
/// Values are Rayleigh quotients `v*av` of the computed eigenvectors, sorted
/// lexicographically by (real, imaginary) part.
pub fn eig_normal(a: &Matrix, cfg: &ToleranceConfig) -> Result<EigenDecomposition> {
    let defect = a.normal_defect();
    if defect > cfg.herm_tol {
        return Err(OpError::NotNormal { defect });
    }
    let n = a.dim();
    let re = a.real_part();
    let im = a.imag_part();
    let (re_values, re_vectors) = jacobi(&re, cfg)?;
    let gap = 1e-7 * (1.0 + a.frobenius_norm());
    let mut columns = re_vectors.columns();
    for range in clusters_of_sorted(&re_values, gap) {
        if range.len() < 2 {
            continue;
        }
        let block: Vec<Vec<C64>> = columns[range.clone()].to_vec();
        let m = block.len();
        let im_block: Vec<Vec<C64>> = block.iter().map(|w| im.apply(w)).collect();
        let restricted = Matrix::from_fn(m, |i, j| inner(&im_block[j], &block[i]));
        let (_, rot) = jacobi(&restricted, cfg)?;
        for j in 0..m {
            let mut col = vec![ZERO; n];
            for (i, w) in block.iter().enumerate() {
                let r = rot[(i, j)];
                for (c, wi) in col.iter_mut().zip(w) {
                    *c += wi * r;
                }
            }
            columns[range.start + j] = col;
        }
    }
    let mut pairs: Vec<(C64, Vec<C64>)> = columns
        .into_iter()
        .map(|v| {
            let av = a.apply(&v);
            (inner(&av, &v), v)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.re.total_cmp(&y.0.re).then(x.0.im.total_cmp(&y.0.im)));
    let values: Vec<C64> = pairs.iter().map(|p| p.0).collect();
    let cols: Vec<Vec<C64>> = pairs.into_iter().map(|p| p.1).collect();
    let vectors = Matrix::from_columns(n, &cols);
    let unitary = unitarity_defect(&vectors) <= cfg.herm_tol * n as f64;
    Ok(EigenDecomposition { values, vectors, unitary })
}
