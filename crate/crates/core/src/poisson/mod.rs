//! Poisson bivectors on ℝⁿ, coordinate-subspace branes and the classical
//! checks that the quantum constructions rely on.

mod brane;
mod checks;
mod fields;
mod structure;

use thiserror::Error;

use crate::polyalg::PolyError;

pub use brane::{Brane, BraneJson};
pub use checks::{
    characteristic_fields, characteristic_fields_ambient, check_coisotropic, is_invariant, jacobi_component,
    jacobiator, relative_membership,
};
pub use fields::{RelativeMultivector, VectorFieldPoly};
pub use structure::{PoissonEntryJson, PoissonJson, PoissonStructure};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoissonError {
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("diagonal entry π^{{{0}{0}}} is identically zero and cannot be set")]
    Diagonal(usize),
    #[error("duplicate entry for ({i},{j})")]
    DuplicateEntry { i: usize, j: usize },
    #[error("brane is not coisotropic: π^{{{mu}{nu}}} does not vanish on it")]
    NotCoisotropic { mu: usize, nu: usize },
    #[error("function depends on conormal variable x{0}")]
    ConormalDependence(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
