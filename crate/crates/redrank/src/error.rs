use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e}, tolerance {tol:.3e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPositive { min_eig: f64 },

    #[error("trace is {trace:.12} but must be 1")]
    NotUnitTrace { trace: f64 },

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("spectrum is not normalized: {0}")]
    NotNormalized(String),

    #[error("cannot decompose the zero vector")]
    ZeroVector,

    #[error("nonzero spectra differ (max deviation {0:.3e}); no rank-one state exists")]
    SpectraMismatch(f64),

    #[error("inequality generation cap exceeded: requested (m={m}, r={r}), cap (m<={max_m}, r<={max_r})")]
    CapExceeded {
        m: usize,
        r: usize,
        max_m: usize,
        max_r: usize,
    },

    #[error("rank {k} is outside the achievable range {min}..={max}")]
    RankOutOfRange { k: usize, min: usize, max: usize },

    #[error("split point {p} is not in 1..{max} for a term of Schmidt rank {max}")]
    SplitOutOfRange { p: usize, max: usize },

    #[error("numerical search failed: {0}")]
    NumericalFailure(String),

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("trace preservation violated (deviation {deviation:.3e}, tolerance {tol:.3e})")]
    NotTracePreserving { deviation: f64, tol: f64 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
