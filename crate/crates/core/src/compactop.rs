//! Grid discretizations of compact operators on `C[0, 1]` and truncations
//! on `ℓ²`.
//!
//! Integral operators use the midpoint rule on `n` uniform cells: nodes
//! `t_j = (j + 1/2)/n` and weight `1/n`.

use serde::Serialize;

use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};
use crate::linalg::eigen::jacobi;
use crate::linalg::{eig_hermitian, eig_normal, svd, Matrix, C64, ONE, ZERO};

pub const MAX_GRID: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Kernel,
    Volterra,
    Multiplication,
    ShiftTruncation,
    Custom,
}

/// A discretized operator with its grid size.
#[derive(Debug, Clone, Serialize)]
pub struct GridOperator {
    pub grid_n: usize,
    pub matrix: Matrix,
    pub kind: OperatorKind,
}

impl GridOperator {
    /// Wraps an arbitrary square matrix.
    pub fn custom(matrix: Matrix) -> Self {
        GridOperator { grid_n: matrix.dim(), matrix, kind: OperatorKind::Custom }
    }
}

fn check_grid(n: usize) -> Result<()> {
    if (2..=MAX_GRID).contains(&n) {
        Ok(())
    } else {
        Err(OpError::InvalidInput(format!("grid size must lie in 2..={MAX_GRID}, got {n}")))
    }
}

/// Midpoint nodes `(j + 1/2)/n`.
pub fn grid_nodes(n: usize) -> Vec<f64> {
    (0..n).map(|j| (j as f64 + 0.5) / n as f64).collect()
}

/// `(T_K f)(s) = ∫₀¹ K(s, t) f(t) dt` with entries `K(s_i, t_j)/n`.
pub fn kernel_operator(kernel: impl Fn(f64, f64) -> C64, n: usize) -> Result<GridOperator> {
    check_grid(n)?;
    let nodes = grid_nodes(n);
    let h = 1.0 / n as f64;
    let mut bad = None;
    let matrix = Matrix::from_fn(n, |i, j| {
        let k = kernel(nodes[i], nodes[j]);
        if !k.re.is_finite() || !k.im.is_finite() {
            bad = Some((nodes[i], nodes[j]));
        }
        k * h
    });
    if let Some((s, t)) = bad {
        return Err(OpError::InvalidInput(format!("kernel is not finite at ({s}, {t})")));
    }
    Ok(GridOperator { grid_n: n, matrix, kind: OperatorKind::Kernel })
}

/// Kernels available by name: `min` for `min(s, t)` and `ones` for `1`.
pub fn named_kernel(name: &str) -> Result<fn(f64, f64) -> C64> {
    match name {
        "min" => Ok(|s, t| C64::new(s.min(t), 0.0)),
        "ones" => Ok(|_, _| ONE),
        other => Err(OpError::InvalidInput(format!("unknown kernel `{other}` (expected min or ones)"))),
    }
}

/// Eigenvalues `4/((2k − 1)²π²)`, `k ≥ 1`, of the `min(s, t)` kernel operator.
pub fn min_kernel_eigenvalue(k: usize) -> f64 {
    let odd = (2 * k - 1) as f64;
    4.0 / (odd * odd * std::f64::consts::PI * std::f64::consts::PI)
}

/// `(Vf)(s) = ∫₀ˢ f(t) dt` with full weight below the diagonal and half
/// weight on it, so constants integrate exactly at the nodes.
pub fn volterra_operator(n: usize) -> Result<GridOperator> {
    check_grid(n)?;
    let h = 1.0 / n as f64;
    let matrix = Matrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => C64::new(h, 0.0),
        std::cmp::Ordering::Equal => C64::new(h / 2.0, 0.0),
        std::cmp::Ordering::Less => ZERO,
    });
    Ok(GridOperator { grid_n: n, matrix, kind: OperatorKind::Volterra })
}

/// The strictly lower-triangular Volterra variant, nilpotent of order `n`.
pub fn volterra_strict(n: usize) -> Result<GridOperator> {
    check_grid(n)?;
    let h = 1.0 / n as f64;
    let matrix = Matrix::from_fn(n, |i, j| if i > j { C64::new(h, 0.0) } else { ZERO });
    Ok(GridOperator { grid_n: n, matrix, kind: OperatorKind::Volterra })
}

/// The diagonal operator `M_f` for sampled values of `f`.
pub fn multiplication_operator(values: &[C64]) -> Result<GridOperator> {
    if values.is_empty() {
        return Err(OpError::InvalidInput("no values given".into()));
    }
    Ok(GridOperator { grid_n: values.len(), matrix: Matrix::from_diag(values), kind: OperatorKind::Multiplication })
}

/// The unilateral shift `e_k ↦ e_{k+1}` cut down to `n` coordinates, so the
/// last basis vector is sent to 0.
pub fn truncated_shift(n: usize) -> Result<GridOperator> {
    check_grid(n)?;
    let matrix = Matrix::from_fn(n, |i, j| if i == j + 1 { ONE } else { ZERO });
    Ok(GridOperator { grid_n: n, matrix, kind: OperatorKind::ShiftTruncation })
}

/// How far the truncated shift is from the relations `S*S = 1` and
/// `SS* = 1 − e₁⊗e₁` of the unilateral shift.
#[derive(Debug, Clone, Serialize)]
pub struct ShiftDefect {
    pub n: usize,
    /// Rank of `1 − S*S` (the infinite shift is an isometry).
    pub isometry_defect_rank: usize,
    /// `‖1 − S*S‖_F / ‖1‖_F`.
    pub isometry_defect_mass: f64,
    /// Rank of `1 − SS*`.
    pub coisometry_defect_rank: usize,
    /// `1 − S*S = e_n⊗e_n` and `1 − SS* = e₁⊗e₁` entrywise.
    pub exact_rank_one_defects: bool,
}

pub fn shift_defect(n: usize, cfg: &ToleranceConfig) -> Result<ShiftDefect> {
    let s = truncated_shift(n)?.matrix;
    let id = Matrix::identity(n);
    let iso = &id - &(&s.adjoint() * &s);
    let coiso = &id - &(&s * &s.adjoint());
    let exact = iso == Matrix::unit(n, n - 1, n - 1) && coiso == Matrix::unit(n, 0, 0);
    Ok(ShiftDefect {
        n,
        isometry_defect_rank: svd(&iso, cfg)?.rank(cfg),
        isometry_defect_mass: iso.frobenius_norm() / id.frobenius_norm(),
        coisometry_defect_rank: svd(&coiso, cfg)?.rank(cfg),
        exact_rank_one_defects: exact,
    })
}

/// `‖P_k·t − t‖` for the coordinate projection `P_k` onto the first `k`
/// coordinates, i.e. the operator norm of the rows below `k`.
pub fn truncation_approximate_unit(t: &GridOperator, k: usize, cfg: &ToleranceConfig) -> Result<f64> {
    let n = t.grid_n;
    if k < 1 || k > n {
        return Err(OpError::BadCutoff { cutoff: k, max: n });
    }
    let tail = n - k;
    if tail == 0 {
        return Ok(0.0);
    }
    // Gram matrix of the tail rows, tail × tail
    let m = &t.matrix;
    let gram = Matrix::from_fn(tail, |i, j| (0..n).map(|c| m[(k + i, c)] * m[(k + j, c)].conj()).sum());
    let (values, _) = jacobi(&gram, cfg)?;
    Ok(values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Best rank-`r` approximation and its error, the `(r+1)`-th singular value.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteRankApproximation {
    pub rank: usize,
    pub matrix: Matrix,
    pub error: f64,
}

/// Truncates the spectral decomposition for normal input and the SVD
/// otherwise.
pub fn finite_rank_approximation(t: &GridOperator, r: usize, cfg: &ToleranceConfig) -> Result<FiniteRankApproximation> {
    let n = t.grid_n;
    if r > n {
        return Err(OpError::BadCutoff { cutoff: r, max: n });
    }
    let m = &t.matrix;
    if m.is_normal(cfg.herm_tol) {
        let eig = if m.is_hermitian(cfg.herm_tol) { eig_hermitian(m, cfg)? } else { eig_normal(m, cfg)? };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| eig.values[y].norm().total_cmp(&eig.values[x].norm()));
        let kept = &order[..r];
        let cols: Vec<(C64, Vec<C64>)> = kept.iter().map(|&k| (eig.values[k], eig.vectors.column(k))).collect();
        let matrix = Matrix::from_fn(n, |i, j| cols.iter().map(|(l, v)| l * v[i] * v[j].conj()).sum());
        let error = order.get(r).map(|&k| eig.values[k].norm()).unwrap_or(0.0);
        return Ok(FiniteRankApproximation { rank: r, matrix, error });
    }
    let d = svd(m, cfg)?;
    let matrix = Matrix::from_fn(n, |i, j| (0..r).map(|k| d.u[(i, k)] * d.s[k] * d.v[(j, k)].conj()).sum());
    Ok(FiniteRankApproximation { rank: r, matrix, error: d.s.get(r).copied().unwrap_or(0.0) })
}

/// Eigenvalues of a Hermitian grid operator in decreasing order.
pub fn eigenvalues_descending(t: &GridOperator, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let mut values = eig_hermitian(&t.matrix, cfg)?.real_values();
    values.reverse();
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::spectral_radius_gelfand;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn kernel_examples() {
        let zero = kernel_operator(|_, _| ZERO, 5).unwrap();
        assert_eq!(zero.matrix, Matrix::zeros(5));
        let ones = kernel_operator(named_kernel("ones").unwrap(), 4).unwrap();
        assert!(ones.matrix.data().iter().all(|&z| z == C64::new(0.25, 0.0)));
        assert_eq!(ones.matrix.apply(&[ONE; 4]), vec![ONE; 4]);
        assert!(kernel_operator(|_, _| ONE, 1).is_err());
        assert!(kernel_operator(|s, _| C64::new(1.0 / (s - 0.5).abs().min(0.0), 0.0), 4).is_err());
    }

    #[test]
    fn min_kernel_top_eigenvalue() {
        let t = kernel_operator(named_kernel("min").unwrap(), 400).unwrap();
        assert!(t.matrix.is_hermitian(1e-15));
        let top = eigenvalues_descending(&t, &cfg()).unwrap()[0];
        assert!((top - 4.0 / (std::f64::consts::PI.powi(2))).abs() < 0.01 * top);
    }

    #[test]
    fn volterra_examples() {
        let n = 10;
        let v = volterra_operator(n).unwrap();
        let ramp = v.matrix.apply(&vec![ONE; n]);
        for (value, s) in ramp.iter().zip(grid_nodes(n)) {
            assert!((value.re - s).abs() <= 1.0 / n as f64);
        }
        let strict = volterra_strict(n).unwrap().matrix;
        assert_eq!(strict.powi(n as u32), Matrix::zeros(n));
        let strict100 = volterra_strict(100).unwrap().matrix;
        assert_eq!(spectral_radius_gelfand(&strict100, &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(multiplication_operator(&[ONE; 3]).unwrap().matrix, Matrix::identity(3));
        let circle: Vec<C64> = (0..5).map(|k| C64::from_polar(1.0, k as f64)).collect();
        let u = multiplication_operator(&circle).unwrap().matrix;
        assert!((&u.adjoint() * &u).approx_eq(&Matrix::identity(5), 1e-15));
        let p = multiplication_operator(&[ONE, ZERO, ONE]).unwrap().matrix;
        assert_eq!(&p * &p, p);
    }

    #[test]
    fn shift_examples() {
        let s = truncated_shift(2).unwrap().matrix;
        assert_eq!(s, Matrix::unit(2, 1, 0));
        assert_eq!(&s.adjoint() * &s, Matrix::from_real_diag(&[1.0, 0.0]));
        for n in [2, 5, 17] {
            let d = shift_defect(n, &cfg()).unwrap();
            assert_eq!((d.isometry_defect_rank, d.coisometry_defect_rank), (1, 1));
            assert!(d.exact_rank_one_defects);
            let norm = crate::linalg::operator_norm(&truncated_shift(n).unwrap().matrix);
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn truncation_examples() {
        let v = volterra_operator(100).unwrap();
        assert_eq!(truncation_approximate_unit(&v, 100, &cfg()).unwrap(), 0.0);
        let r10 = truncation_approximate_unit(&v, 10, &cfg()).unwrap();
        let r50 = truncation_approximate_unit(&v, 50, &cfg()).unwrap();
        assert!(r50 < r10);
        let e11 = GridOperator::custom(Matrix::unit(4, 0, 0));
        assert_eq!(truncation_approximate_unit(&e11, 1, &cfg()).unwrap(), 0.0);
        assert!(matches!(truncation_approximate_unit(&e11, 0, &cfg()), Err(OpError::BadCutoff { .. })));
        assert!(matches!(truncation_approximate_unit(&e11, 5, &cfg()), Err(OpError::BadCutoff { .. })));
    }

    #[test]
    fn finite_rank_examples() {
        let v = volterra_operator(20).unwrap();
        let full = finite_rank_approximation(&v, 20, &cfg()).unwrap();
        assert_eq!(full.error, 0.0);
        assert!(full.matrix.approx_eq(&v.matrix, 1e-12));
        let x: Vec<C64> = (0..6).map(|k| C64::new(k as f64, 1.0)).collect();
        let r1 = GridOperator::custom(crate::projpolar::rank_one(&x, &x).unwrap());
        assert!(finite_rank_approximation(&r1, 1, &cfg()).unwrap().error <= 1e-10);
    }

    #[test]
    fn min_kernel_truncation_error_tracks_sixth_eigenvalue() {
        let t = kernel_operator(named_kernel("min").unwrap(), 400).unwrap();
        let approx = finite_rank_approximation(&t, 5, &cfg()).unwrap();
        let reference = min_kernel_eigenvalue(6);
        assert!((approx.error - reference).abs() <= 0.02 * reference);
    }

    #[test]
    fn volterra_radius_shrinks_with_grid() {
        for n in [25, 50, 100, 200] {
            let v = volterra_operator(n).unwrap().matrix;
            let gelfand = spectral_radius_gelfand(&v, &cfg()).unwrap();
            let diagonal = 0.5 / n as f64;
            assert!(gelfand <= 2.0 / n as f64);
            assert!(gelfand > 0.0);
            if n <= 100 {
                assert!((gelfand - diagonal).abs() <= 1e-2 * diagonal, "n={n}: {gelfand}");
            }
            let spec = crate::spectral::spectrum(&v, &cfg()).unwrap().max_modulus();
            assert!((spec - diagonal).abs() < 1e-15);
            assert!(crate::linalg::operator_norm(&v) <= 1.0);
        }
    }
}
