use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value given for variable `{0}`")]
    MissingVariable(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("not lagrangian: {0}")]
    NotLagrangian(String),
    #[error("imaginary part is singular at this point (real index {0})")]
    SingularImaginaryPart(usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("monomial `{0}` has fiber weight zero")]
    WeightZero(String),
    #[error("section is not in the graph: {0}")]
    SectionNotInGraph(String),
    #[error("vector field is not Euler-like: {0}")]
    NotEulerLike(String),
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
