use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("elements belong to different algebras")]
    MixedAlgebra,

    #[error("degree mismatch for `{generator}`: expected {expected}, found {found}")]
    DegreeMismatch { generator: String, expected: i32, found: i32 },

    #[error("window too small: degree {degree} has no basis elements of weight <= {weight}")]
    WindowTooSmall { degree: i32, weight: u32 },

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("nerve is not downward closed: {cell} is nonempty but its face {face} is not")]
    InconsistentNerve { cell: String, face: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("{path}: {message}")]
    Semantic { path: String, message: String },

    #[error("diagram validation failed: {0}")]
    Validation(String),

    #[error("not a Maurer-Cartan element; residue {residue}")]
    NotMaurerCartan { residue: String },

    #[error("invalid Artin coefficient ring: {0}")]
    InvalidArtin(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn semantic(path: impl Into<String>, message: impl Into<String>) -> Error {
        Error::Semantic { path: path.into(), message: message.into() }
    }
}
