//! Sparse multivariate polynomials over any [`Field`](crate::exact::Field),
//! plus differential forms in four variables.

mod forms;
mod monomial;
mod mpoly;
mod text;
mod varset;

pub use forms::{DiffForm, NDIFF};
pub use monomial::Monomial;
pub use mpoly::{FpPoly, MPoly, RatPoly};
pub use varset::VarSet;

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live over different variable sets or fields")]
    VarSetMismatch,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("no image given for variable {0}")]
    MissingImage(String),
    #[error("form degree would exceed 4")]
    DegreeOverflow,
    #[error("forms of different degrees")]
    DegreeMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
