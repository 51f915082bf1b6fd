use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "opstar", version, about = "Operator-algebra computations on complex square matrices")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Relative threshold for self-adjointness and normality.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_herm: Option<f64>,
    /// Relative singular-value cutoff.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_rank: Option<f64>,
    /// Eigenvalue matching radius.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_eig: Option<f64>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; CSV is available for spectra, group tables and decay tables.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Grid or matrix size where a command generates its own input.
    #[arg(long = "n", global = true, value_name = "N")]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues with multiplicity, sorted lexicographically.
    Spectrum { file: PathBuf },
    /// Apply a scalar function to a matrix.
    Calculus {
        file: PathBuf,
        /// exp, log, sqrt, abs, power:R, indicator:[re,im,radius], poly:[..], cheb:[..]
        #[arg(long)]
        func: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Positive and negative parts of a Hermitian matrix.
    Jordan { file: PathBuf },
    /// Hermitian k-th root.
    Roots {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Positivity of A, or A ≤ B, optionally with A^r ≤ B^r.
    OrderCheck {
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(long)]
        power: Option<f64>,
    },
    /// Polar decomposition t = u·|t|.
    Polar { file: PathBuf },
    /// Right and left support projections.
    Support { file: PathBuf },
    /// Lattice operations on projection matrices.
    Lattice {
        #[arg(value_enum)]
        op: LatticeOp,
        p: PathBuf,
        q: Option<PathBuf>,
    },
    /// Commutant of a set of matrices.
    Commutant {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Characters of the unital *-algebra generated by commuting normal matrices.
    Characters {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Dimension of the ideal of M_n generated by a matrix (random when no file is given).
    SimpleCheck { file: Option<PathBuf> },
    /// Finite group algebras.
    Group {
        #[command(subcommand)]
        action: GroupCommand,
    },
    /// Grid discretizations of compact operators.
    Compact {
        #[command(subcommand)]
        action: CompactCommand,
    },
    /// Run a worked example, or `all`.
    Demo { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Continuous calculus for normal input, contour integral otherwise.
    Auto,
    Holo,
    Continuous,
    Borel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeOp {
    Meet,
    Join,
    Complement,
    Leq,
}

/// Groups are given as a JSON table file or by name: `zN`, `zAxzB...`, `s3`, `q8`.
#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    Fourier { group: String, f: PathBuf },
    Convolve { group: String, f: PathBuf, g: PathBuf },
    Characters { group: String },
}

#[derive(Debug, Subcommand)]
pub enum CompactCommand {
    /// Spectral data of the Volterra discretization (default n = 100).
    Volterra,
    /// Eigenvalues (or singular values) of a kernel operator (default n = 400).
    Kernel {
        /// min, ones, or a path to a matrix of kernel samples K(s_i, t_j)
        #[arg(long, default_value = "min")]
        name: String,
    },
    /// Selected entries of the decay sequence with the analytic reference for `min`.
    Decay {
        #[arg(long, default_value = "min")]
        name: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
    },
}
