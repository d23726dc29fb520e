use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid plant: {0}")]
    InvalidPlant(String),
    #[error("matrix is singular over the field of rational functions")]
    SingularMatrix,
    #[error("evaluation point {0} is a pole")]
    PoleAtEvaluation(String),
    #[error("no Bezout witness found up to degree {0}")]
    InconclusiveCoprimeness(usize),
    #[error("not unimodular over the stable ring: {0}")]
    NotUnimodular(String),
    #[error("sparsity constraint is not quadratically invariant under the plant")]
    QiViolation,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
