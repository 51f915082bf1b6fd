//! Column-vector helpers. Inner products are linear in the first slot:
//! `⟨x, y⟩ = Σ xᵢ·conj(yᵢ)`.

use super::matrix::{C64, ZERO};

pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    assert_eq!(x.len(), y.len(), "dimension mismatch");
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn scale(x: &[C64], s: C64) -> Vec<C64> {
    x.iter().map(|z| z * s).collect()
}

pub fn sub(x: &[C64], y: &[C64]) -> Vec<C64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn basis_vector(n: usize, k: usize) -> Vec<C64> {
    let mut e = vec![ZERO; n];
    e[k] = C64::new(1.0, 0.0);
    e
}

/// Removes the components of `v` along the orthonormal `basis`, twice
/// (classical Gram–Schmidt with one reorthogonalization pass).
pub fn orthogonalize_against(v: &mut [C64], basis: &[Vec<C64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = inner(v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
    }
}

/// Orthonormal basis of `span(vectors)`.
///
/// A vector is kept when its component orthogonal to the previously kept ones
/// exceeds `rel_tol` times the largest input norm.
pub fn orthonormalize(vectors: &[Vec<C64>], rel_tol: f64) -> Vec<Vec<C64>> {
    let scale = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    if scale == 0.0 {
        return basis;
    }
    for v in vectors {
        let mut w = v.clone();
        orthogonalize_against(&mut w, &basis);
        let r = norm(&w);
        if r > rel_tol * scale {
            basis.push(scale_real(&w, 1.0 / r));
        }
    }
    basis
}

/// Extends an orthonormal family to an orthonormal basis of `ℂⁿ`.
///
/// Each step adds the coordinate vector with the largest component
/// orthogonal to the current family; that component has squared norm at
/// least `(n − m)/n` when `m` vectors are present.
pub fn complete_basis(n: usize, partial: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let mut basis = partial.to_vec();
    while basis.len() < n {
        let best = (0..n)
            .map(|k| {
                let mut e = basis_vector(n, k);
                orthogonalize_against(&mut e, &basis);
                e
            })
            .max_by(|x, y| norm(x).total_cmp(&norm(y)))
            .expect("n > 0");
        let r = norm(&best);
        basis.push(scale_real(&best, 1.0 / r));
    }
    basis
}

pub fn scale_real(x: &[C64], s: f64) -> Vec<C64> {
    x.iter().map(|z| z * s).collect()
}
