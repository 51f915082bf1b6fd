//! Positivity and the order on Hermitian matrices.

use serde::Serialize;

use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};
use crate::funcalc::matrix_power;
use crate::linalg::vector::inner;
use crate::linalg::{eig_hermitian, operator_norm, EigenDecomposition, Matrix, C64, I, ONE, ZERO};
use crate::random;

/// Number of random unit vectors used to sample the quadratic form.
const FORM_SAMPLES: usize = 100;

/// Outcome of a positivity test with both certificates.
///
/// `min_eigenvalue` is the spectral certificate; `min_quadratic_form` is the
/// smallest `Re⟨ax, x⟩` over seeded random unit vectors and is only computed
/// when the spectral test passes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityCertificate {
    pub positive: bool,
    pub hermitian: bool,
    pub min_eigenvalue: Option<f64>,
    pub min_quadratic_form: Option<f64>,
}

fn hermitian_eig(a: &Matrix, cfg: &ToleranceConfig) -> Result<EigenDecomposition> {
    if !a.is_hermitian(cfg.herm_tol) {
        return Err(OpError::NotHermitian { defect: a.hermitian_defect() });
    }
    eig_hermitian(a, cfg)
}

fn spectral_norm_of(values: &[f64]) -> f64 {
    values.iter().map(|t| t.abs()).fold(0.0, f64::max)
}

/// `λ_min ≥ −eig_tol·(1 + ‖a‖)` for a Hermitian spectrum.
fn spectrum_is_nonnegative(values: &[f64], cfg: &ToleranceConfig) -> bool {
    let lambda_min = values.first().copied().unwrap_or(0.0);
    lambda_min >= -cfg.eig_tol * (1.0 + spectral_norm_of(values))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &Matrix, cfg: &ToleranceConfig) -> Result<f64> {
    Ok(hermitian_eig(a, cfg)?.real_values()[0])
}

/// Positivity: Hermitian with nonnegative spectrum, confirmed on the
/// quadratic form. Both thresholds are `−eig_tol·(1 + ‖a‖)`.
pub fn is_positive(a: &Matrix, cfg: &ToleranceConfig) -> Result<PositivityCertificate> {
    if !a.is_hermitian(cfg.herm_tol) {
        return Ok(PositivityCertificate {
            positive: false,
            hermitian: false,
            min_eigenvalue: None,
            min_quadratic_form: None,
        });
    }
    let values = eig_hermitian(a, cfg)?.real_values();
    let lambda_min = values[0];
    if !spectrum_is_nonnegative(&values, cfg) {
        return Ok(PositivityCertificate {
            positive: false,
            hermitian: true,
            min_eigenvalue: Some(lambda_min),
            min_quadratic_form: None,
        });
    }
    let mut rng = random::rng(cfg.seed);
    let form_min = (0..FORM_SAMPLES)
        .map(|_| {
            let x = random::unit_vector(&mut rng, a.dim());
            inner(&a.apply(&x), &x).re
        })
        .fold(f64::INFINITY, f64::min);
    let bound = -cfg.eig_tol * (1.0 + spectral_norm_of(&values));
    Ok(PositivityCertificate {
        positive: form_min >= bound,
        hermitian: true,
        min_eigenvalue: Some(lambda_min),
        min_quadratic_form: Some(form_min),
    })
}

/// Two matrices of equal size, compared by `a ≤ b`.
#[derive(Debug, Clone)]
pub struct OrderedPair {
    pub a: Matrix,
    pub b: Matrix,
}

impl OrderedPair {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(OpError::DimensionMismatch { expected: a.dim(), actual: b.dim() });
        }
        Ok(OrderedPair { a, b })
    }

    /// `b − a` is Hermitian with `λ_min ≥ −eig_tol·(1 + ‖b − a‖)`.
    pub fn holds(&self, cfg: &ToleranceConfig) -> Result<bool> {
        leq(&self.a, &self.b, cfg)
    }
}

/// `a ≤ b`, decided from the eigenvalues of `b − a`.
pub fn leq(a: &Matrix, b: &Matrix, cfg: &ToleranceConfig) -> Result<bool> {
    let d = b - a;
    if !d.is_hermitian(cfg.herm_tol) {
        return Ok(false);
    }
    let values = eig_hermitian(&d, cfg)?.real_values();
    Ok(spectrum_is_nonnegative(&values, cfg))
}

/// Positive and negative parts of a Hermitian matrix.
#[derive(Debug, Clone, Serialize)]
pub struct JordanParts {
    pub positive: Matrix,
    pub negative: Matrix,
}

/// `a = a₊ − a₋` with `a₊a₋ = 0`, both positive.
pub fn jordan_decompose(a: &Matrix, cfg: &ToleranceConfig) -> Result<JordanParts> {
    let eig = hermitian_eig(a, cfg)?;
    Ok(JordanParts {
        positive: eig.reconstruct_with(|z| C64::new(z.re.max(0.0), 0.0)),
        negative: eig.reconstruct_with(|z| C64::new((-z.re).max(0.0), 0.0)),
    })
}

/// `‖a₋‖ = max(0, −λ_min)`, the least `λ` with `a + λ ≥ 0`.
pub fn negative_part_norm(a: &Matrix, cfg: &ToleranceConfig) -> Result<f64> {
    Ok((-min_eigenvalue(a, cfg)?).max(0.0))
}

/// Hermitian `k`-th root. Odd roots keep the sign of each eigenvalue; even
/// roots need `a ≥ 0` and return the positive root.
pub fn nth_root(a: &Matrix, k: u32, cfg: &ToleranceConfig) -> Result<Matrix> {
    if k == 0 {
        return Err(OpError::InvalidInput("root order must be positive".into()));
    }
    let eig = hermitian_eig(a, cfg)?;
    let values = eig.real_values();
    if k % 2 == 0 && !spectrum_is_nonnegative(&values, cfg) {
        return Err(OpError::NotPositive { min_eigenvalue: values[0] });
    }
    let inv = 1.0 / k as f64;
    Ok(eig.reconstruct_with(|z| {
        let t = z.re;
        let root = if k % 2 == 0 { t.max(0.0).powf(inv) } else { t.signum() * t.abs().powf(inv) };
        C64::new(root, 0.0)
    }))
}

fn require_positive_pair(pair: &OrderedPair, cfg: &ToleranceConfig) -> Result<()> {
    if !is_positive(&pair.a, cfg)?.positive {
        return Err(OpError::PreconditionFailed("a is not positive".into()));
    }
    if !pair.holds(cfg)? {
        return Err(OpError::PreconditionFailed("a ≤ b does not hold".into()));
    }
    Ok(())
}

/// Whether `a^r ≤ b^r` for a pair with `0 ≤ a ≤ b`. Always true for
/// `0 < r ≤ 1`; may fail for `r > 1`.
pub fn monotone_power_check(pair: &OrderedPair, r: f64, cfg: &ToleranceConfig) -> Result<bool> {
    if !(r.is_finite() && r > 0.0) {
        return Err(OpError::InvalidInput(format!("exponent must be positive, got {r}")));
    }
    require_positive_pair(pair, cfg)?;
    let ar = matrix_power(&pair.a.hermitize(), r, cfg)?;
    let br = matrix_power(&pair.b.hermitize(), r, cfg)?;
    leq(&ar, &br, cfg)
}

/// Whether `b⁻¹ ≤ a⁻¹` for a pair with `0 ≤ a ≤ b` and `a` invertible.
pub fn inverse_order_check(pair: &OrderedPair, cfg: &ToleranceConfig) -> Result<bool> {
    require_positive_pair(pair, cfg)?;
    let a_inv = matrix_power(&pair.a.hermitize(), -1.0, cfg)
        .map_err(|_| OpError::PreconditionFailed("a is not invertible".into()))?;
    let b_inv = match matrix_power(&pair.b.hermitize(), -1.0, cfg) {
        Ok(x) => x,
        Err(OpError::Singular) => return Ok(false),
        Err(e) => return Err(e),
    };
    leq(&b_inv, &a_inv, cfg)
}

/// `u = b + i·(1 − b²)^{1/2}` for a Hermitian contraction `b`, so that
/// `b = (u + u*)/2`.
fn unitary_lift(b: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let eig = eig_hermitian(b, cfg)?;
    Ok(eig.reconstruct_with(|z| {
        let t = z.re.clamp(-1.0, 1.0);
        C64::new(t, (1.0 - t * t).sqrt())
    }))
}

/// `a` as `Σ c_k·U_k` with four unitaries.
///
/// Each Hermitian part `h` (with `a = Re a + i·Im a`) is scaled to a
/// contraction and written as `‖h‖/2·(u + u*)`. A zero part contributes two
/// copies of the identity with coefficient 0.
pub fn four_unitaries(a: &Matrix, cfg: &ToleranceConfig) -> Result<Vec<(C64, Matrix)>> {
    let n = a.dim();
    let mut out = Vec::with_capacity(4);
    for (factor, part) in [(ONE, a.real_part()), (I, a.imag_part())] {
        let s = operator_norm(&part);
        if s == 0.0 {
            out.push((ZERO, Matrix::identity(n)));
            out.push((ZERO, Matrix::identity(n)));
            continue;
        }
        let u = unitary_lift(&part.scale_real(1.0 / s), cfg)?;
        let coeff = factor * (s / 2.0);
        let u_star = u.adjoint();
        out.push((coeff, u));
        out.push((coeff, u_star));
    }
    Ok(out)
}

/// `a = p₁ − p₂ + i·p₃ − i·p₄` with positive `p_k`, from the Jordan parts of
/// the real and imaginary parts. Returned as `(coefficient, p_k)` pairs with
/// coefficients `1, −1, i, −i`.
pub fn four_positives(a: &Matrix, cfg: &ToleranceConfig) -> Result<Vec<(C64, Matrix)>> {
    let re = jordan_decompose(&a.real_part(), cfg)?;
    let im = jordan_decompose(&a.imag_part(), cfg)?;
    Ok(vec![(ONE, re.positive), (-ONE, re.negative), (I, im.positive), (-I, im.negative)])
}

/// `u ↦ (1 − u)⁻¹ − 1 = u(1 − u)⁻¹` on positive contractions with `‖u‖ < 1`.
pub fn approx_unit_transform(u: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let eig = positive_eig(u, cfg)?;
    let norm = spectral_norm_of(&eig.real_values());
    if norm >= 1.0 {
        return Err(OpError::NormTooLarge { norm });
    }
    Ok(eig.reconstruct_with(|z| C64::new(z.re / (1.0 - z.re), 0.0)))
}

/// `x ↦ 1 − (1 + x)⁻¹ = x(1 + x)⁻¹` on positive matrices; the result is a
/// positive contraction of norm below 1.
pub fn approx_unit_inverse_transform(x: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let eig = positive_eig(x, cfg)?;
    Ok(eig.reconstruct_with(|z| C64::new(z.re / (1.0 + z.re), 0.0)))
}

fn positive_eig(a: &Matrix, cfg: &ToleranceConfig) -> Result<EigenDecomposition> {
    let eig = hermitian_eig(a, cfg)?;
    let values = eig.real_values();
    if !spectrum_is_nonnegative(&values, cfg) {
        return Err(OpError::NotPositive { min_eigenvalue: values[0] });
    }
    Ok(eig)
}
