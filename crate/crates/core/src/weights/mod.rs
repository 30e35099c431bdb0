//! Configuration-space weights: angle forms, gauge-fixed integrands,
//! Monte Carlo integration and the persistent weight cache.

mod angle;
mod cache;
mod integrand;
mod layout;
mod mc;
mod source;

use thiserror::Error;

pub use crate::graphs::Scheme;
pub use angle::{angle_halfplane, angle_quadrant, form_gradient, EdgeForm};
pub use cache::WeightCache;
pub use integrand::{integrand, Integrand};
pub use layout::{Gauge, Layout};
pub use mc::{weight_mc, weight_mc_with, Exec, McOptions, WeightResult, BATCH};
pub use source::{exact_weight, SourceStats, WeightMode, WeightSource, ACCEPTABLE_STDERR, DEFAULT_TARGET};

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("moduli dimension {moduli} differs from edge count {edges}; the weight vanishes by degree")]
    DimensionMismatch { moduli: usize, edges: usize },
    #[error("coincident points in angle evaluation")]
    Coincident,
    #[error("graph {key} cannot be integrated in scheme {scheme}: {reason}")]
    Unsupported { key: String, scheme: Scheme, reason: String },
    #[error("missing weights for {} graph(s): {}", .0.len(), .0.join(" "))]
    Missing(Vec<String>),
    #[error("weight cache I/O: {0}")]
    Io(#[from] std::io::Error),
}
