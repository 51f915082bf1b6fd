use thiserror::Error;

/// Every failure the toolkit reports.
///
/// Variants fall in two families: malformed input (wrong shapes, unparsable
/// files, bad arguments) and mathematical precondition failures (an operand
/// is not normal, not positive, too close to the spectrum, ...).
/// [`OpError::is_input_error`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid tolerance configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not normal (relative defect {defect:.3e})")]
    NotNormal { defect: f64 },
    #[error("matrix is not positive (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("Neumann series diverges: |1 - a| = {distance:.6} >= 1")]
    SeriesDiverges { distance: f64 },
    #[error("point lies numerically in the spectrum (distance {distance:.3e})")]
    SpectrumHit { distance: f64 },
    #[error("integration contour is too close to a singularity of the function or the spectrum")]
    ContourTooClose,
    #[error("contour quadrature did not converge (relative change {change:.3e})")]
    QuadratureNotConverged { change: f64 },
    #[error("function is undefined at spectral point {re}+{im}i")]
    UndefinedAtSpectrum { re: f64, im: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("norm {norm:.6} is not below 1")]
    NormTooLarge { norm: f64 },
    #[error("equivalent predicates disagree: {0}")]
    InconsistentPredicates(String),
    #[error("algebra does not contain the identity")]
    NotUnital,
    #[error("element is not in the algebra (residual {residual:.3e})")]
    NotMember { residual: f64 },
    #[error("element is zero")]
    ZeroElement,
    #[error("matrix is not a projection (defect {defect:.3e})")]
    NotProjection { defect: f64 },
    #[error("maps do not form a double centralizer (defect {defect:.3e})")]
    NotDoubleCentralizer { defect: f64 },
    #[error("algebra is not commutative (commutator norm {defect:.3e})")]
    NotCommutative { defect: f64 },
    #[error("could not separate joint eigenspaces after {attempts} attempts")]
    DegenerateSeparation { attempts: usize },
    #[error("functions live on different groups")]
    GroupMismatch,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("cutoff {cutoff} outside 1..={max}")]
    BadCutoff { cutoff: usize, max: usize },
}

impl OpError {
    /// True for malformed-input errors, false for mathematical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            OpError::DimensionMismatch { .. }
                | OpError::InvalidInput(_)
                | OpError::InvalidConfig(_)
                | OpError::InvalidGroup(_)
                | OpError::GroupMismatch
                | OpError::BadCutoff { .. }
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            OpError::DimensionMismatch { .. } => "DimensionMismatch",
            OpError::InvalidInput(_) => "InvalidInput",
            OpError::InvalidConfig(_) => "InvalidConfig",
            OpError::InvalidGroup(_) => "InvalidGroup",
            OpError::NotHermitian { .. } => "NotHermitian",
            OpError::NotNormal { .. } => "NotNormal",
            OpError::NotPositive { .. } => "NotPositive",
            OpError::Singular => "Singular",
            OpError::NoConvergence(_) => "NoConvergence",
            OpError::SeriesDiverges { .. } => "SeriesDiverges",
            OpError::SpectrumHit { .. } => "SpectrumHit",
            OpError::ContourTooClose => "ContourTooClose",
            OpError::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            OpError::UndefinedAtSpectrum { .. } => "UndefinedAtSpectrum",
            OpError::PreconditionFailed(_) => "PreconditionFailed",
            OpError::NormTooLarge { .. } => "NormTooLarge",
            OpError::InconsistentPredicates(_) => "InconsistentPredicates",
            OpError::NotUnital => "NotUnital",
            OpError::NotMember { .. } => "NotMember",
            OpError::ZeroElement => "ZeroElement",
            OpError::NotProjection { .. } => "NotProjection",
            OpError::NotDoubleCentralizer { .. } => "NotDoubleCentralizer",
            OpError::NotCommutative { .. } => "NotCommutative",
            OpError::DegenerateSeparation { .. } => "DegenerateSeparation",
            OpError::GroupMismatch => "GroupMismatch",
            OpError::NotAbelian => "NotAbelian",
            OpError::BadCutoff { .. } => "BadCutoff",
        }
    }
}

pub type Result<T> = std::result::Result<T, OpError>;
