//! Finite-dimensional operator-algebra toolkit on complex square matrices.

pub mod compactop;
pub mod config;
pub mod error;
pub mod funcalc;
pub mod groupalg;
pub mod linalg;
pub mod order;
pub mod projpolar;
pub mod random;
pub mod spectral;
pub mod structure;

pub use config::ToleranceConfig;
pub use error::{OpError, Result};
pub use linalg::{Matrix, C64};
