use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("quiver has a cycle through vertex `{0}`")]
    Cycle(String),
    #[error("operator is not nilpotent of index {0}")]
    NotNilpotent(usize),
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error("differentials do not square to zero at degree {0}")]
    NotComplex(i64),
    #[error("not a chain map at degree {0}")]
    NotChainMap(i64),
    #[error("{0} is not a monomorphism")]
    NotMono(String),
    #[error("{0} is not an epimorphism")]
    NotEpi(String),
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Input errors are malformed or ill-typed data; everything else is a
    /// mathematical failure on well-formed data.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Schema { .. }
                | Error::Shape(_)
                | Error::BaseMismatch(_)
                | Error::UnknownVertex(_)
                | Error::UnknownArrow(_)
                | Error::Cycle(_)
                | Error::NotNilpotent(_)
                | Error::NotMorphism(_)
                | Error::NotComplex(_)
                | Error::NotChainMap(_)
                | Error::Unsupported(_)
        )
    }

    pub fn schema(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
