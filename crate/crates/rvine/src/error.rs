use thiserror::Error;

/// Errors produced by the vine-copula engine.
#[derive(Error, Debug, Clone)]
pub enum RvineError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("structure error at position ({row}, {col}): {msg}")]
    Structure { row: usize, col: usize, msg: String },

    #[error("index error: {0}")]
    Index(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("singular matrix: {0}")]
    Singularity(String),

    #[error("integration failure: {0}")]
    Integration(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("non-numeric value at line {line}, column {col}: {msg}")]
    NonNumeric { line: usize, col: usize, msg: String },

    #[error("constant column '{0}' cannot be rank-transformed")]
    ConstantColumn(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("io error: {0}")]
    Io(String),
}

impl RvineError {
    pub fn structure(row: usize, col: usize, msg: impl Into<String>) -> Self {
        RvineError::Structure {
            row,
            col,
            msg: msg.into(),
        }
    }

    /// Stable process exit code for the CLI: 0 success, 2 parse, 3 convergence,
    /// 4 domain, 5 integration, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RvineError::Parse { .. }
            | RvineError::NonNumeric { .. }
            | RvineError::ConstantColumn(_)
            | RvineError::Dimension(_) => 2,
            RvineError::Convergence(_) => 3,
            RvineError::Domain(_) | RvineError::Structure { .. } => 4,
            RvineError::Integration(_) => 5,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for RvineError {
    fn from(e: std::io::Error) -> Self {
        RvineError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, RvineError>;
