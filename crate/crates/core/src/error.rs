use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("unknown algebra {0:?} (expected su2 through su6)")]
    UnknownAlgebra(String),
    #[error("cannot bracket {lhs} with {rhs} in the {family} family")]
    FamilyMix { lhs: String, rhs: String, family: &'static str },
    #[error("bad generator descriptor {0:?}: {1}")]
    Descriptor(String, String),
    #[error("the zero root label has no sign")]
    ZeroRootLabel,
    #[error("Serre relations are only defined off the diagonal (i = j = {0})")]
    DiagonalSerre(usize),
    #[error("highest root {0} cannot be reached by bracketing simple-root generators")]
    HighestRootUnreachable(String),
    #[error("inner product needs equal m labels, got {0} and {1}")]
    MismatchedM(i32, i32),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
