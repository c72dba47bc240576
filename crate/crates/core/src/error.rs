use thiserror::Error;

/// Errors raised by the constructors, solvers and experiment drivers.
///
/// Variants split into two families: precondition violations (bad
/// parameters, mismatched grids, inadmissible wave parameters) and
/// numerical failures (non-convergence, loss of contraction). The CLI maps
/// them onto different exit codes via [`Error::is_precondition`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("length mismatch: expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("grid mismatch: fields live on different grids")]
    GridMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inadmissible wave parameters ({case}): {detail}")]
    Inadmissible { case: &'static str, detail: String },

    #[error("elliptic modulus {0} outside (0, 1)")]
    ModulusOutOfRange(f64),

    #[error("symbol undefined at mode {0}")]
    SymbolUndefined(i64),

    #[error("symbol 1 + alpha is not invertible at mode {0}")]
    NonInvertibleSymbol(i64),

    #[error("operator symbol must be real and even")]
    OddSymbol,

    #[error("truncation M = {m} too large for a grid of {n} points (need M <= N/4)")]
    TruncationTooLarge { m: usize, n: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NonHermitian(f64),

    #[error("constraint set is rank deficient (rank {rank} of {requested})")]
    DegenerateConstraints { rank: usize, requested: usize },

    #[error("requested time {requested} exceeds the guaranteed contraction window {window}")]
    WindowExceeded { requested: f64, window: f64 },

    #[error("Picard iteration failed to contract (ratios {ratios:?})")]
    NoContraction { ratios: Vec<f64> },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by inputs outside the documented domain.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::NoContraction { .. }
                | Error::Quadrature(_)
                | Error::DegenerateFit(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
