//! Dense complex linear algebra: the substrate every other module builds on.

pub mod eigen;
pub mod matrix;
pub mod solve;
pub mod svd;
pub mod vector;

pub use eigen::{eig_hermitian, eig_normal, EigenDecomposition};
pub use matrix::{Matrix, C64, I, ONE, ZERO};
pub use solve::{inverse, solve};
pub use svd::{nullspace, numerical_rank, operator_norm, svd, Svd};

/// `a*`.
pub fn adjoint(a: &Matrix) -> Matrix {
    a.adjoint()
}
