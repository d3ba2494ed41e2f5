use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported algebra type `{0}`")]
    UnsupportedType(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}: {msg}")]
    ParseAt { line: usize, msg: String },

    #[error("operands belong to different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),

    #[error("level {0} is critical")]
    CriticalLevel(String),

    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),

    #[error("graded component is empty")]
    EmptyComponent,

    #[error("zero vector")]
    ZeroVector,

    #[error("spectral flow shift is not integral for root {0}")]
    NonIntegralShift(String),

    #[error("element is not of weight zero")]
    NotWeightZero,

    #[error("empty polynomial set")]
    EmptyInput,

    #[error("{0}")]
    Invalid(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
