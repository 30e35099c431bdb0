use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Integration domain and gauge family for a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    /// Upper half-plane: star product, A(ξ) and F(ξ,η) weights.
    HalfPlane,
    /// Quadrant, module element at the corner and algebra element on the positive real axis.
    QuadrantW0,
    /// Quadrant, algebra element on the positive imaginary axis and module element at the corner.
    QuadrantW1,
    /// Quadrant with a single boundary function at the corner (two-brane A(ξ)).
    QuadrantCorner,
}

/// Domain shape, the "H|Q" field of a graph key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geometry {
    HalfPlane,
    Quadrant,
}

/// Where a boundary vertex sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryLoc {
    /// Real axis; in the quadrant, the positive real axis (brane C₀).
    Real,
    /// Positive imaginary axis (brane C₁).
    Imag,
    /// The corner of the quadrant (C₀∩C₁).
    Corner,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::HalfPlane, Scheme::QuadrantW0, Scheme::QuadrantW1, Scheme::QuadrantCorner];

    pub fn geometry(self) -> Geometry {
        match self {
            Scheme::HalfPlane => Geometry::HalfPlane,
            _ => Geometry::Quadrant,
        }
    }

    /// Location of each boundary vertex B1, B2, … for a graph with `n_b` of them.
    pub fn boundary_locs(self, n_b: usize) -> Vec<BoundaryLoc> {
        let locs: &[BoundaryLoc] = match self {
            Scheme::HalfPlane => &[BoundaryLoc::Real, BoundaryLoc::Real],
            Scheme::QuadrantW0 => &[BoundaryLoc::Corner, BoundaryLoc::Real],
            Scheme::QuadrantW1 => &[BoundaryLoc::Imag, BoundaryLoc::Corner],
            Scheme::QuadrantCorner => &[BoundaryLoc::Corner],
        };
        assert!(n_b <= locs.len(), "scheme {self} has at most {} boundary vertices", locs.len());
        locs[..n_b].to_vec()
    }

    /// Boundary-vertex count the scheme is built for, if fixed.
    pub fn boundary_count(self) -> Option<usize> {
        match self {
            Scheme::HalfPlane => None,
            Scheme::QuadrantW0 | Scheme::QuadrantW1 => Some(2),
            Scheme::QuadrantCorner => Some(1),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::HalfPlane => "HalfPlane",
            Scheme::QuadrantW0 => "QuadrantW0",
            Scheme::QuadrantW1 => "QuadrantW1",
            Scheme::QuadrantCorner => "QuadrantCorner",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "HalfPlane" | "H" => Ok(Scheme::HalfPlane),
            "QuadrantW0" | "Q0" => Ok(Scheme::QuadrantW0),
            "QuadrantW1" | "Q1" => Ok(Scheme::QuadrantW1),
            "QuadrantCorner" | "QC" => Ok(Scheme::QuadrantCorner),
            _ => Err(format!("unknown scheme {s:?} (HalfPlane, QuadrantW0, QuadrantW1, QuadrantCorner)")),
        }
    }
}

impl Geometry {
    pub fn letter(self) -> char {
        match self {
            Geometry::HalfPlane => 'H',
            Geometry::Quadrant => 'Q',
        }
    }
}
