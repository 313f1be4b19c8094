use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("axis {axis} out of range for dimension {n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("tridiagonal eigen-solve did not converge after {iterations} iterations")]
    EigenNonConvergence { iterations: usize },

    #[error("quadrature did not reach tolerance: estimate {value}, error {error}")]
    QuadratureNonConvergence { value: f64, error: f64 },

    #[error(
        "quadrature grid mismatch on axis {axis}: grid exponent {grid_mu}, expected {expected_mu}"
    )]
    GridMismatch {
        axis: usize,
        grid_mu: f64,
        expected_mu: f64,
    },

    #[error("coefficient support violation at index {index:?}: order {order} exceeds {limit}")]
    SupportViolation {
        index: Vec<u32>,
        order: u32,
        limit: u32,
    },

    #[error(
        "series did not converge at r = {r}: last term {last_term:e}, partial sum {partial_sum:e}"
    )]
    SeriesNonConvergence {
        r: f64,
        last_term: f64,
        partial_sum: f64,
    },

    #[error("function not decayed at grid boundary: {found:e} exceeds {limit:e}")]
    BoundaryDecay { found: f64, limit: f64 },

    #[error("signal mass near window edge: {found:e} exceeds {limit:e}")]
    EdgeMass { found: f64, limit: f64 },

    #[error("sample point has z_{axis} = 0")]
    SingularSample { axis: usize },

    #[error("kernel evaluated at the origin")]
    Origin,
}

pub type Result<T> = std::result::Result<T, Error>;
