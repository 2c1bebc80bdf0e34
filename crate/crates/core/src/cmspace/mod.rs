//! Calogero-Moser points, modules over the one-point extension, and the
//! diagnostics and group actions defined on them.

mod linsys;
mod module;
mod point;

pub use module::{euler_char, ext1_dim, hom_a_dim, hom_dim, trace_lift_check, BModule, PiModule};
pub use point::{
    commutant_dim, generic_point, lambda_act, moduli_dim, omega_twist, tangent_dim, verify_relations, CMPoint, OneForm,
    RelationCheck, RelationReport,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CmError {
    #[error("size mismatch: {0}")]
    Size(String),
    #[error("point {index} is not on the curve")]
    NotOnCurve { index: usize },
    #[error("points {i} and {j} share the {coordinate} coordinate")]
    RepeatedCoordinate { coordinate: char, i: usize, j: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("matrix {0} is singular")]
    Singular(String),
}
