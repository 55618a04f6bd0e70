use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcaError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("dimension {0} out of range 1..=9")]
    BadDim(usize),
    #[error("generator index {index} exceeds dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected a grade-1 element")]
    NotVector,
    #[error("form is not antisymmetric")]
    NotAntisymmetric,
    #[error("no antipode exists for this bi-convolution")]
    NoAntipode,
    #[error("linear form is not invertible (value on Id is zero)")]
    NotInvertible,
    #[error("invalid ordering form: {0}")]
    BadOrderingForm(String),
    #[error("state is not U(2) invariant: r != s")]
    NotU2Invariant,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, QcaError>;

pub(crate) fn same_dim(a: usize, b: usize) -> Result<usize> {
    if a == b {
        Ok(a)
    } else {
        Err(QcaError::DimMismatch(a, b))
    }
}
