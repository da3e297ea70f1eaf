use thiserror::Error;

use crate::row::Status;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] korbit::Error),

    #[error("malformed parameters: {0}")]
    Params(String),

    #[error("unknown check id {0:?}")]
    UnknownCheck(String),

    #[error("a {0} row has no witness to verify")]
    NotVerifiable(Status),
}

pub type LabResult<T> = Result<T, LabError>;
