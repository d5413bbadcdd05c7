use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree error: {0}")]
    Degree(String),

    #[error("no pivot: D1 = 0 and no transform restored a nonzero pivot")]
    Pivot,

    #[error("center system has rank {rank}, expected 2")]
    CenterRank { rank: usize },

    #[error("repeated eigenvalue: D2^2 - 4 D1 D3 = 0")]
    RepeatedEigenvalue,

    #[error("form is not diagonalizable: {0}")]
    NotDiagonalizable(String),

    #[error("characteristic polynomial does not split over Q; use numeric mode")]
    IrrationalSpectrum,

    #[error("no radical method applies: {0}")]
    NoRadicalMethod(String),

    #[error("resolvent cubic has no usable root")]
    ResolventFailure,

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unknown solver `{0}`")]
    UnknownSolver(String),
}
