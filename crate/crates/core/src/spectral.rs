//! Spectra, spectral radius, Neumann-series inversion and resolvents.
//!
//! Normal matrices get their spectrum from the unitary diagonalization.
//! Everything else goes through the characteristic polynomial (Faddeev–LeVerrier
//! coefficients on the norm-scaled matrix) and Aberth–Ehrlich root finding.
//! That route is fine for the small non-normal examples it serves (n ≤ 16) and
//! becomes ill-conditioned beyond.

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};
use crate::linalg::{eig_normal, operator_norm, solve, Matrix, C64, ZERO};

/// Eigenvalue multiset of a matrix, with the matrix norm at computation time.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub points: Vec<C64>,
    pub source_norm: f64,
}

impl Spectrum {
    /// Points sorted lexicographically by (real, imaginary) part.
    pub fn sorted_points(&self) -> Vec<C64> {
        let mut pts = self.points.clone();
        sort_lexicographic(&mut pts);
        pts
    }

    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Distance from `z` to the nearest spectral point.
    pub fn distance_to(&self, z: C64) -> f64 {
        self.points.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pts = self.sorted_points();
        let mut seq = serializer.serialize_seq(Some(pts.len()))?;
        for z in pts {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}

pub fn sort_lexicographic(points: &mut [C64]) {
    points.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
}

/// Largest distance in a greedy minimal-distance pairing of two multisets,
/// or `None` when their sizes differ.
///
/// All cross distances are sorted and pairs are taken in increasing order
/// whenever both endpoints are still free.
pub fn multiset_distance(x: &[C64], y: &[C64]) -> Option<f64> {
    if x.len() != y.len() {
        return None;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            pairs.push(((a - b).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_x = vec![false; x.len()];
    let mut used_y = vec![false; y.len()];
    let mut worst: f64 = 0.0;
    let mut matched = 0;
    for (d, i, j) in pairs {
        if matched == x.len() {
            break;
        }
        if !used_x[i] && !used_y[j] {
            used_x[i] = true;
            used_y[j] = true;
            worst = worst.max(d);
            matched += 1;
        }
    }
    Some(worst)
}

/// Multiset equality within `tol` under greedy pairing.
pub fn multisets_match(x: &[C64], y: &[C64], tol: f64) -> bool {
    multiset_distance(x, y).is_some_and(|d| d <= tol)
}

/// Eigenvalues with algebraic multiplicity.
pub fn spectrum(a: &Matrix, cfg: &ToleranceConfig) -> Result<Spectrum> {
    Ok(Spectrum { points: eigenvalues(a, cfg)?, source_norm: operator_norm(a) })
}

/// Eigenvalue multiset without the norm bookkeeping of [`spectrum`].
pub fn eigenvalues(a: &Matrix, cfg: &ToleranceConfig) -> Result<Vec<C64>> {
    let n = a.dim();
    let scale = a.max_abs();
    if scale == 0.0 {
        return Ok(vec![ZERO; n]);
    }
    if a.is_normal(cfg.herm_tol) {
        return Ok(eig_normal(a, cfg)?.values);
    }
    if is_triangular(a) {
        let mut pts = a.diag();
        sort_lexicographic(&mut pts);
        return Ok(pts);
    }
    let b = a.scale_real(1.0 / scale);
    if is_numerically_nilpotent(&b) {
        return Ok(vec![ZERO; n]);
    }
    let coeffs = characteristic_polynomial(&b);
    let roots = polynomial_roots(&coeffs, cfg)?;
    let mut pts: Vec<C64> = roots.into_iter().map(|z| z * scale).collect();
    sort_lexicographic(&mut pts);
    Ok(pts)
}

fn is_triangular(a: &Matrix) -> bool {
    let n = a.dim();
    let below = (0..n).all(|i| (0..i).all(|j| a[(i, j)] == ZERO));
    let above = (0..n).all(|i| (i + 1..n).all(|j| a[(i, j)] == ZERO));
    below || above
}

/// `bⁿ` vanishes to within rounding of `‖b‖ⁿ`.
fn is_numerically_nilpotent(b: &Matrix) -> bool {
    let n = b.dim() as i32;
    let power = b.powi(n as u32).frobenius_norm();
    power <= 1e-14 * b.frobenius_norm().max(1.0).powi(n)
}

/// Monic characteristic polynomial `det(λ − a)`, coefficients ascending.
pub fn characteristic_polynomial(a: &Matrix) -> Vec<C64> {
    let n = a.dim();
    let mut c = vec![ZERO; n + 1];
    c[n] = C64::new(1.0, 0.0);
    let mut m = Matrix::zeros(n);
    for k in 1..=n {
        m = (a * &m).shift(c[n + 1 - k]);
        c[n - k] = -(a * &m).trace() / k as f64;
    }
    c
}

fn horner(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of a monic polynomial (coefficients ascending) by Aberth–Ehrlich
/// simultaneous iteration.
pub fn polynomial_roots(coeffs: &[C64], cfg: &ToleranceConfig) -> Result<Vec<C64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound on the root moduli
    let bound = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = bound.min(2.0) * 0.75;
    let mut z: Vec<C64> = (0..deg)
        .map(|k| C64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4))
        .collect();
    const MAX_SWEEPS: usize = 1000;
    for _ in 0..MAX_SWEEPS {
        let mut largest: f64 = 0.0;
        for k in 0..deg {
            let (p, dp) = horner(&monic, z[k]);
            if p == ZERO {
                continue;
            }
            let w = p / dp;
            let repulsion: C64 = (0..deg).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = w / (1.0 - w * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            largest = largest.max(step.norm() / (1.0 + z[k].norm()));
        }
        if largest <= cfg.conv_tol {
            return Ok(z);
        }
    }
    // Multiple roots converge only linearly and stall at rounding level;
    // accept them when the residual is at that level.
    let ok = z.iter().all(|&zk| {
        let (p, _) = horner(&monic, zk);
        let scale: f64 = monic.iter().enumerate().map(|(i, c)| c.norm() * zk.norm().powi(i as i32)).sum();
        p.norm() <= 1e-8 * scale
    });
    if ok {
        Ok(z)
    } else {
        Err(OpError::NoConvergence("Aberth root iteration"))
    }
}

fn gelfand_norm(a: &Matrix) -> f64 {
    // any norm yields the same limit; the operator norm is too costly for
    // large grids
    if a.dim() <= 32 {
        operator_norm(a)
    } else {
        a.frobenius_norm()
    }
}

/// Spectral radius as the limit of `‖a^m‖^{1/m}` along `m = 2^k`.
///
/// Each iterate is renormalized to unit norm with the logarithm of the
/// discarded scale accumulated separately. The returned estimate is
/// `(‖a^{2m}‖ / ‖a^m‖)^{1/m}`, which has the same limit and loses the
/// `C^{1/m}` bias of the plain root. A matrix whose sparsity pattern is
/// acyclic is nilpotent and gets radius 0; a square that only underflows
/// to zero ends the iteration with an extrapolated estimate.
pub fn spectral_radius_gelfand(a: &Matrix, cfg: &ToleranceConfig) -> Result<f64> {
    const SQUARING_CAP: usize = 40;
    let norm0 = gelfand_norm(a);
    if norm0 == 0.0 || pattern_is_acyclic(a) {
        return Ok(0.0);
    }
    let mut b = a.scale_real(1.0 / norm0);
    let mut log_scale = norm0.ln();
    let mut power = 1.0_f64;
    let mut previous: Option<f64> = None;
    let mut before: Option<f64> = None;
    for _ in 0..SQUARING_CAP.min(cfg.max_iter) {
        let sq = &b * &b;
        let s = gelfand_norm(&sq);
        if s == 0.0 {
            // structural nilpotency was ruled out above, so this zero is
            // underflow from a defective dominant block, where the estimate
            // errs by O(1/m); one Richardson step removes that term.
            return Ok(match (before, previous) {
                (Some(e0), Some(e1)) => (2.0 * e1 - e0).max(0.0),
                (_, last) => last.unwrap_or(0.0),
            });
        }
        if !s.is_finite() {
            return Err(OpError::NoConvergence("Gelfand spectral radius iteration"));
        }
        let estimate = ((log_scale + s.ln()) / power).exp();
        if let Some(prev) = previous {
            if (estimate - prev).abs() <= cfg.conv_tol * estimate.max(f64::MIN_POSITIVE) {
                return Ok(estimate);
            }
        }
        before = previous;
        previous = Some(estimate);
        b = sq.scale_real(1.0 / s);
        log_scale = 2.0 * log_scale + s.ln();
        power *= 2.0;
    }
    Err(OpError::NoConvergence("Gelfand spectral radius iteration"))
}

/// True when the digraph of nonzero entries has no cycle, which forces
/// `a` to be nilpotent with every power computed exactly zero.
fn pattern_is_acyclic(a: &Matrix) -> bool {
    let n = a.dim();
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)] != ZERO {
                indegree[j] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&j| indegree[j] == 0).collect();
    let mut removed = 0;
    while let Some(i) = ready.pop() {
        removed += 1;
        for j in 0..n {
            if a[(i, j)] != ZERO {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(j);
                }
            }
        }
    }
    removed == n
}

/// Inverse of `a` as `Σₖ (1 − a)^k`, valid when `‖1 − a‖ < 1`.
pub fn neumann_inverse(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let n = a.dim();
    let d = &Matrix::identity(n) - a;
    let q = operator_norm(&d);
    if q >= 1.0 {
        return Err(OpError::SeriesDiverges { distance: q });
    }
    let needed = if q > 0.0 { (cfg.conv_tol.ln() / q.ln()).ceil() as usize + 10 } else { 1 };
    let cap = needed.max(cfg.max_iter).min(10_000_000);
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for _ in 0..cap {
        term = &term * &d;
        let size = term.frobenius_norm();
        if size < cfg.conv_tol {
            return Ok(&sum + &term);
        }
        sum = &sum + &term;
    }
    Err(OpError::NoConvergence("Neumann series"))
}

/// `(λ·1 − a)⁻¹`.
pub fn resolvent(a: &Matrix, lambda: C64, cfg: &ToleranceConfig) -> Result<Matrix> {
    let spec = spectrum(a, cfg)?;
    let distance = spec.distance_to(lambda);
    if distance <= cfg.rank_tol * (1.0 + spec.source_norm) {
        return Err(OpError::SpectrumHit { distance });
    }
    let shifted = (-a).shift(lambda);
    solve(&shifted, &Matrix::identity(a.dim()), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I, ONE};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn assert_multiset(got: &[C64], want: &[C64], tol: f64) {
        let d = multiset_distance(got, want).expect("same size");
        assert!(d <= tol, "got {got:?}, want {want:?} (distance {d:e})");
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&Matrix::from_real_diag(&[1.0, 2.0, 3.0]), &cfg()).unwrap();
        assert_multiset(&s.points, &[ONE, ONE * 2.0, ONE * 3.0], 1e-13);
        let s = spectrum(&Matrix::unit(2, 0, 1), &cfg()).unwrap();
        assert_eq!(s.points, vec![ZERO, ZERO]);
        assert!((s.source_norm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cyclic_shift_has_fourth_roots_of_unity() {
        let shift = Matrix::from_fn(4, |i, j| if i == (j + 1) % 4 { ONE } else { ZERO });
        let s = spectrum(&shift, &cfg()).unwrap();
        assert_multiset(&s.points, &[ONE, I, -ONE, -I], 1e-12);
    }

    #[test]
    fn non_normal_spectrum_via_characteristic_polynomial() {
        // upper triangular: eigenvalues on the diagonal
        let a = Matrix::from_rows(&[
            [C64::new(1.0, 0.0), C64::new(3.0, 0.0), C64::new(-1.0, 2.0)],
            [ZERO, C64::new(-2.0, 1.0), C64::new(0.5, 0.0)],
            [ZERO, ZERO, C64::new(0.25, 0.0)],
        ]);
        assert!(!a.is_normal(1e-10));
        let s = spectrum(&a, &cfg()).unwrap();
        assert_multiset(&s.points, &a.diag(), 1e-10);
    }

    #[test]
    fn characteristic_polynomial_of_companion_like_matrix() {
        // [[0,1],[1,1]]: t² − t − 1
        let c = characteristic_polynomial(&Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 1.0]]));
        assert_eq!(c, vec![-ONE, -ONE, ONE]);
    }

    #[test]
    fn gelfand_examples() {
        let r = spectral_radius_gelfand(&Matrix::from_real_diag(&[2.0, -5.0]), &cfg()).unwrap();
        assert!((r - 5.0).abs() < 1e-12);
        let r = spectral_radius_gelfand(&Matrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]), &cfg()).unwrap();
        assert_eq!(r, 0.0);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let r = spectral_radius_gelfand(&Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 1.0]]), &cfg()).unwrap();
        assert!((r - golden).abs() < 1e-12);
    }

    #[test]
    fn gelfand_on_non_normal_matrix() {
        let a = Matrix::from_real_rows(&[[0.5, 10.0], [0.0, -0.25]]);
        let r = spectral_radius_gelfand(&a, &cfg()).unwrap();
        assert!((r - 0.5).abs() < 1e-9, "{r}");
        assert_eq!(spectral_radius_gelfand(&Matrix::zeros(3), &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn neumann_examples() {
        assert_eq!(neumann_inverse(&Matrix::identity(2), &cfg()).unwrap(), Matrix::identity(2));
        let x = neumann_inverse(&Matrix::from_real_diag(&[0.5, 0.75]), &cfg()).unwrap();
        assert!(x.approx_eq(&Matrix::from_real_diag(&[2.0, 4.0 / 3.0]), 1e-11));
        // (1 − N/2)⁻¹ = 1 + N/2 since N² = 0
        let n = Matrix::unit(2, 0, 1);
        let a = &Matrix::identity(2) - &n.scale_real(0.5);
        let x = neumann_inverse(&a, &cfg()).unwrap();
        assert!(x.approx_eq(&(&Matrix::identity(2) + &n.scale_real(0.5)), 1e-15));
    }

    #[test]
    fn neumann_rejects_far_elements() {
        let err = neumann_inverse(&Matrix::from_real_diag(&[3.0, 1.0]), &cfg()).unwrap_err();
        assert!(matches!(err, OpError::SeriesDiverges { .. }));
    }

    #[test]
    fn resolvent_examples() {
        let r = resolvent(&Matrix::zeros(2), ONE, &cfg()).unwrap();
        assert_eq!(r, Matrix::identity(2));
        let r = resolvent(&Matrix::from_real_diag(&[1.0, 2.0]), ONE * 3.0, &cfg()).unwrap();
        assert!(r.approx_eq(&Matrix::from_real_diag(&[0.5, 1.0]), 1e-15));
        let n = Matrix::unit(2, 0, 1);
        let r = resolvent(&n, ONE, &cfg()).unwrap();
        assert!(r.approx_eq(&(&Matrix::identity(2) + &n), 1e-15));
    }

    #[test]
    fn resolvent_at_eigenvalue_is_rejected() {
        let err = resolvent(&Matrix::from_real_diag(&[1.0, 2.0]), ONE * 2.0, &cfg()).unwrap_err();
        assert!(matches!(err, OpError::SpectrumHit { .. }));
    }

    #[test]
    fn ab_and_ba_share_spectrum_on_matrix_units() {
        let a = Matrix::unit(2, 0, 1);
        let b = Matrix::unit(2, 1, 0);
        let sab = spectrum(&(&a * &b), &cfg()).unwrap();
        let sba = spectrum(&(&b * &a), &cfg()).unwrap();
        assert_multiset(&sab.points, &[ONE, ZERO], 1e-14);
        assert_multiset(&sba.points, &[ZERO, ONE], 1e-14);
    }

    #[test]
    fn spectrum_serializes_sorted() {
        let s = Spectrum { points: vec![C64::new(2.0, 0.0), C64::new(1.0, -1.0)], source_norm: 2.0 };
        assert_eq!(serde_json::to_string(&s).unwrap(), "[[1.0,-1.0],[2.0,0.0]]");
    }

    #[test]
    fn multiset_sizes_must_agree() {
        assert_eq!(multiset_distance(&[ONE], &[ONE, ONE]), None);
        assert!(multisets_match(&[ONE, I], &[I, ONE], 0.0));
    }
}
