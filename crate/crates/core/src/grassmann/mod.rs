//! Plücker-coordinate layer: quadric coefficients and their gauge, the
//! coisotropy bracket, the 21x3 coisotropy matrix and its minors, and the
//! normalization `Q + lambda P`.

mod bracket;
mod coords;
mod fig1;

pub use bracket::{
    bracket, bracket_coeffs, catanese_normalize, certificate_holds, coisotropy_check, fig1_rank,
    half_bracket_coeffs, CataneseNormalization, CoisotropyCertificate, BRACKET_PAIRS,
};
pub use coords::{
    c_entry, c_index, c_vars, coefficient_of_slot, invariant_images, invariant_slot,
    plucker_relation, plucker_vars, v_vars, InvariantVector, PlueckerVector, QuadricCoeffs, GAUGE,
    NC, NV, PAIRS,
};
pub use fig1::{
    catanese_generators, coisotropic_ideal_generators, fig1_minors, fig1_numeric, fig1_symbolic,
    is_gauge_invariant, kernel_from_certificate, mat_vec, plucker_column, to_invariant, Minor,
};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("expected a quadratic form in the six Plücker variables")]
    NotQuadratic,
    #[error("the quadric is zero")]
    ZeroQuadric,
    #[error("the quadric is a multiple of the Plücker relation")]
    PlueckerMultiple,
    #[error("the quadric is not coisotropic")]
    NotCoisotropic,
    #[error("no unique normalizing multiple of the Plücker relation")]
    NoUniqueLambda,
    #[error("minor with rows {0:?} is not gauge invariant")]
    InvarianceViolation([usize; 3]),
    #[error("the vector does not satisfy the Plücker relation or is zero")]
    NotALine,
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}
