use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree {degree} exceeds the basis maximum {max}")]
    Degree { degree: usize, max: usize },

    #[error("inadmissible activation exponent gamma = {0}: need gamma > -1/2 and 2*gamma+1 not an even integer")]
    Inadmissible(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("sequence too short: need {need} terms, have {have}")]
    Length { need: usize, have: usize },

    #[error("index {index} out of bounds for length {len}")]
    OutOfBounds { index: usize, len: usize },

    #[error("unsupported point generator {kind} for q = {q}")]
    Unsupported { kind: String, q: usize },

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("quadrature of order {order} is infeasible: exactness residual {residual:.3e} exceeds {tol:.3e}")]
    Infeasible { order: usize, residual: f64, tol: f64 },

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("{}: line {line}: {msg}", path.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "<input>".into()))]
    Parse {
        path: Option<PathBuf>,
        line: usize,
        msg: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
