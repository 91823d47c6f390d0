use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("model mismatch: {0:?} vs {1:?}")]
    ModelMismatch(crate::scalars::Model, crate::scalars::Model),
    #[error("operands live at different parameter points")]
    PointMismatch,
    #[error("fractional power of non-group-like element `{0}`")]
    NonGroupLikePower(String),
    #[error("not a combination of Gauss monomials: {0}")]
    NotGaussMonomial(String),
    #[error("no closed form for pair ({0}, {1})")]
    UnknownPair(String, String),
    #[error("colour value must be a nonzero rational, got {0}")]
    ZeroColour(String),
    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
