use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::WeightError;
use crate::graphs::{AdmGraph, BoundaryLoc, Geometry, Scheme, Target};

/// Gauge choice: `scale` is the distance of the fixing point from the origin
/// (B2 = scale, the circle radius, or the fixed point i·scale) and
/// `designated` overrides which aerial vertex absorbs the constraint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gauge {
    pub scale: f64,
    pub designated: Option<usize>,
}

impl Default for Gauge {
    fn default() -> Self {
        Gauge { scale: 1.0, designated: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Slot {
    /// Both coordinates are moduli, starting at column `col`.
    Free {
        col: usize,
    },
    /// Point on the arc r·e^{iα}, α ∈ (lo, hi); α is modulus `col`.
    Circle {
        col: usize,
        radius: f64,
        lo: f64,
        hi: f64,
    },
    Fixed(Complex64),
}

/// Gauge-fixed parametrization of a graph's configuration space.
#[derive(Clone, Debug)]
pub struct Layout {
    pub(crate) geometry: Geometry,
    pub(crate) aerial: Vec<Slot>,
    pub(crate) boundary: Vec<(Complex64, BoundaryLoc)>,
    pub(crate) moduli: usize,
    /// ±1: orientation of the slice relative to the quotient orientation.
    pub(crate) orientation: f64,
}

impl Layout {
    pub fn new(g: &AdmGraph, scheme: Scheme, gauge: Gauge) -> Result<Self, WeightError> {
        let unsupported = |reason: &str| WeightError::Unsupported { key: g.key(), scheme, reason: reason.to_string() };
        if scheme.geometry() != g.geometry {
            return Err(unsupported("graph geometry does not match scheme"));
        }
        if let Some(n) = scheme.boundary_count() {
            if n != g.n_b {
                return Err(unsupported("boundary-vertex count does not match scheme"));
            }
        }
        let b = gauge.scale;
        let locs = scheme.boundary_locs(g.n_b);
        let boundary: Vec<(Complex64, BoundaryLoc)> = match (scheme, g.n_b) {
            (Scheme::HalfPlane, 2) => vec![(Complex64::new(0.0, 0.0), locs[0]), (Complex64::new(b, 0.0), locs[1])],
            (Scheme::HalfPlane, 1) | (Scheme::QuadrantCorner, 1) => vec![(Complex64::new(0.0, 0.0), locs[0])],
            (Scheme::HalfPlane, 0) => vec![],
            (Scheme::QuadrantW0, 2) => vec![(Complex64::new(0.0, 0.0), locs[0]), (Complex64::new(b, 0.0), locs[1])],
            (Scheme::QuadrantW1, 2) => vec![(Complex64::new(0.0, b), locs[0]), (Complex64::new(0.0, 0.0), locs[1])],
            _ => return Err(unsupported("unsupported boundary configuration")),
        };
        // Vertex absorbing the remaining symmetry, if any.
        let needs_designated = matches!((scheme, g.n_b), (Scheme::HalfPlane, 0 | 1) | (Scheme::QuadrantCorner, _));
        let designated = if needs_designated {
            let d = gauge.designated.unwrap_or(if g.n_xi > 0 { g.ordinary() + 1 } else { 1 });
            if d == 0 || d > g.k {
                return Err(unsupported("designated vertex out of range"));
            }
            Some(d)
        } else {
            if gauge.designated.is_some() {
                return Err(unsupported("scheme has no designated vertex"));
            }
            None
        };
        let mut aerial = Vec::with_capacity(g.k);
        let mut col = 0;
        for v in 1..=g.k {
            let slot = match designated {
                Some(d) if d == v => match (scheme, g.n_b) {
                    (Scheme::HalfPlane, 0) => Slot::Fixed(Complex64::new(0.0, b)),
                    (Scheme::HalfPlane, _) => Slot::Circle { col, radius: b, lo: 0.0, hi: PI },
                    _ => Slot::Circle { col, radius: b, lo: 0.0, hi: FRAC_PI_2 },
                },
                _ => Slot::Free { col },
            };
            col += match slot {
                Slot::Free { .. } => 2,
                Slot::Circle { .. } => 1,
                Slot::Fixed(_) => 0,
            };
            aerial.push(slot);
        }
        let mut layout = Layout { geometry: g.geometry, aerial, boundary, moduli: col, orientation: 1.0 };
        if layout.moduli != g.edge_count() {
            return Err(WeightError::DimensionMismatch { moduli: layout.moduli, edges: g.edge_count() });
        }
        layout.orientation = layout.compute_orientation();
        Ok(layout)
    }

    pub fn moduli(&self) -> usize {
        self.moduli
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn position(&self, t: Target, q: &[f64]) -> Complex64 {
        match t {
            Target::Boundary(b) => self.boundary[b - 1].0,
            Target::Aerial(v) => match self.aerial[v - 1] {
                Slot::Free { col } => Complex64::new(q[col], q[col + 1]),
                Slot::Circle { col, radius, .. } => Complex64::from_polar(radius, q[col]),
                Slot::Fixed(z) => z,
            },
        }
    }

    /// Adds `gx·∂x/∂q + gy·∂y/∂q` of aerial vertex `v` into `row`.
    #[inline]
    pub(crate) fn chain(&self, v: usize, gx: f64, gy: f64, q: &[f64], row: &mut [f64]) {
        match self.aerial[v - 1] {
            Slot::Free { col } => {
                row[col] += gx;
                row[col + 1] += gy;
            }
            Slot::Circle { col, radius, .. } => {
                let (s, c) = q[col].sin_cos();
                row[col] += radius * (-s * gx + c * gy);
            }
            Slot::Fixed(_) => {}
        }
    }

    /// A generic interior configuration, used to evaluate orientation signs.
    pub(crate) fn representative(&self) -> Vec<f64> {
        let mut q = vec![0.0; self.moduli];
        for (i, slot) in self.aerial.iter().enumerate() {
            match *slot {
                Slot::Free { col } => {
                    q[col] = 0.31 + 0.17 * i as f64;
                    q[col + 1] = 0.53 + 0.29 * i as f64;
                }
                Slot::Circle { col, lo, hi, .. } => q[col] = 0.5 * (lo + hi),
                Slot::Fixed(_) => {}
            }
        }
        q
    }

    /// Sign of det[X_b, X_a, slice tangents] in configuration coordinates
    /// (aerial x,y in vertex order, then one coordinate per non-corner boundary point).
    fn compute_orientation(&self) -> f64 {
        let q = self.representative();
        let k = self.aerial.len();
        let bcoords: Vec<(usize, BoundaryLoc)> = self
            .boundary
            .iter()
            .enumerate()
            .filter(|(_, (_, loc))| *loc != BoundaryLoc::Corner)
            .map(|(i, (_, loc))| (i, *loc))
            .collect();
        let n = 2 * k + bcoords.len();
        let mut cols: Vec<Vec<f64>> = Vec::new();
        if self.geometry == Geometry::HalfPlane {
            let mut xb = vec![0.0; n];
            for v in 0..k {
                xb[2 * v] = 1.0;
            }
            for (j, _) in bcoords.iter().enumerate() {
                xb[2 * k + j] = 1.0;
            }
            cols.push(xb);
        }
        let mut xa = vec![0.0; n];
        for v in 0..k {
            let z = self.position(Target::Aerial(v + 1), &q);
            xa[2 * v] = z.re;
            xa[2 * v + 1] = z.im;
        }
        for (j, (i, loc)) in bcoords.iter().enumerate() {
            let z = self.boundary[*i].0;
            xa[2 * k + j] = if *loc == BoundaryLoc::Imag { z.im } else { z.re };
        }
        cols.push(xa);
        for m in 0..self.moduli {
            let mut t = vec![0.0; n];
            for v in 0..k {
                let mut row = vec![0.0; self.moduli];
                // ∂(x_v)/∂q_m and ∂(y_v)/∂q_m via the chain rule with unit gradients
                self.chain(v + 1, 1.0, 0.0, &q, &mut row);
                t[2 * v] = row[m];
                row.iter_mut().for_each(|r| *r = 0.0);
                self.chain(v + 1, 0.0, 1.0, &q, &mut row);
                t[2 * v + 1] = row[m];
            }
            cols.push(t);
        }
        assert_eq!(cols.len(), n, "group dimension plus moduli must equal configuration dimension");
        let mat = DMatrix::from_fn(n, n, |r, c| cols[c][r]);
        let d = mat.determinant();
        assert!(d.abs() > 1e-9, "degenerate gauge slice");
        d.signum()
    }
}
