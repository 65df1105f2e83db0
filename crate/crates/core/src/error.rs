use thiserror::Error;

use crate::cli::spec::SpecError;
use crate::grouprep::{GroupError, IrrepError};
use crate::multipoly::RingMismatch;
use crate::scalars::{LiteralError, ScalarError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Irrep(#[from] IrrepError),
    #[error(transparent)]
    Literal(#[from] LiteralError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Ring(#[from] RingMismatch),
    #[error("time budget of {0} s exceeded")]
    Budget(f64),
    /// A computation left its proven range; indicates invalid input or a bug.
    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
