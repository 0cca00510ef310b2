//! Exact symbolic and modular computations for quadrics in the Grassmannian
//! of lines in projective 3-space.

pub mod exact;
pub mod poly;
pub mod grassmann;
pub mod components;
pub mod integrability;
pub mod ideals;
