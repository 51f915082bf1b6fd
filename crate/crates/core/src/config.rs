use serde::{Deserialize, Serialize};

use crate::error::{OpError, Result};

/// Numerical policy shared by every predicate and iterative routine.
///
/// The analysis these routines mirror is exact; every threshold below is a
/// floating-point decision. `seed` drives all sampled certificates so that
/// results are reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative Frobenius threshold for self-adjointness and normality.
    pub herm_tol: f64,
    /// Singular-value cutoff relative to the largest singular value.
    pub rank_tol: f64,
    /// Eigenvalue matching radius (scaled by `1 + ‖a‖` where relevant).
    pub eig_tol: f64,
    /// Relative convergence threshold for iterations.
    pub conv_tol: f64,
    /// Iteration cap (Jacobi sweeps, squaring steps, ...).
    pub max_iter: usize,
    /// Seed for every randomized check.
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            herm_tol: 1e-10,
            rank_tol: 1e-8,
            eig_tol: 1e-7,
            conv_tol: 1e-12,
            max_iter: 100,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let thresholds = [
            ("herm_tol", self.herm_tol),
            ("rank_tol", self.rank_tol),
            ("eig_tol", self.eig_tol),
            ("conv_tol", self.conv_tol),
        ];
        for (name, value) in thresholds {
            if !(value > 0.0 && value.is_finite()) {
                return Err(OpError::InvalidConfig(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if self.max_iter == 0 {
            return Err(OpError::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// Multiplies every threshold by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            herm_tol: self.herm_tol * factor,
            rank_tol: self.rank_tol * factor,
            eig_tol: self.eig_tol * factor,
            conv_tol: self.conv_tol * factor,
            ..*self
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}
