use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix needs at least one row and column and rows*cols entries (got {rows}x{cols}, {len} entries)")]
    InvalidShape { rows: usize, cols: usize, len: usize },

    #[error("{op}: shape mismatch, {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: {rows}x{cols} matrix does not factor as {dim_a}x{dim_e}")]
    DimensionMismatch {
        op: &'static str,
        rows: usize,
        cols: usize,
        dim_a: usize,
        dim_e: usize,
    },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("result would have {rows} rows, above the limit of {limit}")]
    TooLarge { rows: usize, limit: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max deviation of U^dag U from I is {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("not a density matrix: {reason} ({value:e})")]
    NotDensity { reason: &'static str, value: f64 },

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("joint state is not in the SL class (traceless nonzero block at ({row}, {col}))")]
    NonSl { row: usize, col: usize },

    #[error("components cancel at ({row}, {col}): coefficient is zero but term {term} is not")]
    Cancellation { term: usize, row: usize, col: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("expected {expected} generator parameters, got {found}")]
    ParamLength { expected: usize, found: usize },

    #[error("initial state does not satisfy the positivity condition")]
    PreconditionTheorem,

    #[error("initial state has vanishing discord; every induced map is CP")]
    PreconditionVqd,

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}

impl Error {
    /// True for errors caused by inconsistent sizes rather than invalid content.
    pub fn is_dimension_error(&self) -> bool {
        matches!(
            self,
            Error::ShapeMismatch { .. } | Error::DimensionMismatch { .. } | Error::TooLarge { .. }
        )
    }
}
