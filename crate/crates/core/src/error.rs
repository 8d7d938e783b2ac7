use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("ragged input: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("zero vector where a direction is required")]
    ZeroVector,
    #[error("points are not contained in an open hemisphere")]
    DegenerateHull,
    #[error("tolerance `{name}` = {value:e} outside (0, 1e-2)")]
    InvalidTolerance { name: &'static str, value: f64 },
    #[error("argument {value} outside [-1, 1]")]
    Domain { value: f64 },
    #[error("invariant broken: {0}")]
    InvariantBroken(String),
}
