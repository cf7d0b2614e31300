use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant maps onto one CLI exit-code class; see [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation (N = 0, p = 0, n <= p, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Shapes of matrices or vectors do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// The requested (p, n) pair admits no fibration by pairwise skew fibers.
    #[error("no affine Hopf fibration with fiber dimension {p} in R^{n}: requires p <= rho(n - p) - 1 = {bound}")]
    NonExistent { p: u64, n: u64, bound: i64 },

    /// The coordinate change that normalizes a dual family does not exist.
    #[error("normalization error: {0}")]
    Normalization(String),

    /// A linear system that must be uniquely solvable turned out singular.
    #[error("singular system: {0}")]
    Singular(String),

    /// The great subspace lies in the hyperplane removed by the chosen affine chart.
    #[error("equatorial fiber: span lies in the hyperplane x_{chart} = 0")]
    Equatorial { chart: usize },

    /// Malformed textual input (rationals, JSON documents).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Normalization(_) | Error::Singular(_) => 1,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
