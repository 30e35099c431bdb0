//! Admissible graphs: enumeration, structural pruning and canonical keys.

mod enumerate;
mod graph;
mod key;
mod orbit;
mod prune;
mod scheme;

use thiserror::Error;

pub use enumerate::{count, enumerate, enumerate_iter, DEFAULT_CAP};
pub use graph::{AdmGraph, Edge, EdgeKind, GraphJson, KindSet, Target, Vertex};
pub use key::decode_key;
pub use orbit::{orbit_rep, OrbitRep};
pub use prune::{index_range, prune_structural, survives, BraneConfig};
pub use scheme::{BoundaryLoc, Geometry, Scheme};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("{ordinary} ordinary vertices exceed the enumeration cap {cap}")]
    CapExceeded { ordinary: usize, cap: usize },
    #[error("invalid graph family: {0}")]
    Shape(String),
    #[error("bad graph key {key:?}: {reason}")]
    Key { key: String, reason: String },
}
