//! Graph operators B_Γ and the deformed products built from them.

mod assemble;
mod product;
mod vfield;

use thiserror::Error;

use crate::poisson::PoissonError;
use crate::polyalg::PolyError;
use crate::weights::WeightError;

pub use assemble::{bidiff_from_graph, boundary_directions_ok};
pub use product::{DeformedProduct, Side};
pub use vfield::{AssumptionReport, LiftOutcome, OpSeries, PairCheck};

/// Absolute floor below which a coefficient counts as zero regardless of error.
pub const ZERO_FLOOR: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("π does not satisfy the Jacobi identity")]
    NotPoisson,
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Graph(#[from] crate::graphs::GraphError),
    #[error("{0}")]
    Domain(String),
    #[error("operation needs a {0} brane configuration")]
    Config(&'static str),
}
