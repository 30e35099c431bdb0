use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::PoissonError;
use crate::polyalg::{PolyJson, QPoly, Rational};

/// Antisymmetric bivector π = Σ_{i<j} π^{ij} ∂_i∧∂_j with polynomial entries.
///
/// Only i<j is stored; Jacobi is not assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonStructure {
    dim: usize,
    upper: BTreeMap<(usize, usize), QPoly>,
}

impl PoissonStructure {
    pub fn zero(dim: usize) -> Self {
        PoissonStructure { dim, upper: BTreeMap::new() }
    }

    /// Builds π from (i, j, π^{ij}) triples, 1-based; i > j entries are stored negated.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, QPoly)>,
    ) -> Result<Self, PoissonError> {
        let mut pi = Self::zero(dim);
        for (i, j, p) in entries {
            let key = (i.min(j), i.max(j));
            if pi.upper.contains_key(&key) {
                return Err(PoissonError::DuplicateEntry { i: key.0, j: key.1 });
            }
            pi.set(i, j, p)?;
        }
        Ok(pi)
    }

    pub fn set(&mut self, i: usize, j: usize, p: QPoly) -> Result<(), PoissonError> {
        for idx in [i, j] {
            if idx == 0 || idx > self.dim {
                return Err(PoissonError::IndexOutOfRange { index: idx, dim: self.dim });
            }
        }
        if p.dim() != self.dim {
            return Err(PoissonError::DimMismatch { expected: self.dim, found: p.dim() });
        }
        if i == j {
            return Err(PoissonError::Diagonal(i));
        }
        let (key, val) = if i < j { ((i, j), p) } else { ((j, i), p.neg()) };
        if val.is_zero() {
            self.upper.remove(&key);
        } else {
            self.upper.insert(key, val);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// π^{ij} with antisymmetry applied, 1-based.
    pub fn get(&self, i: usize, j: usize) -> QPoly {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => QPoly::zero(self.dim),
            Less => self.upper.get(&(i, j)).cloned().unwrap_or_else(|| QPoly::zero(self.dim)),
            Greater => self.upper.get(&(j, i)).map(QPoly::neg).unwrap_or_else(|| QPoly::zero(self.dim)),
        }
    }

    /// Nonzero upper-triangular entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QPoly)> {
        self.upper.iter().map(|(&(i, j), p)| (i, j, p))
    }

    pub fn is_zero(&self) -> bool {
        self.upper.is_empty()
    }

    /// True when every entry is a constant.
    pub fn is_constant(&self) -> bool {
        self.upper.values().all(|p| p.total_degree().unwrap_or(0) == 0)
    }

    /// Poisson bracket {f,g} = π^{ij} ∂_i f ∂_j g.
    pub fn bracket(&self, f: &QPoly, g: &QPoly) -> QPoly {
        let mut out = QPoly::zero(self.dim);
        for (i, j, p) in self.entries() {
            let a = f.diff(i).unwrap().mul(&g.diff(j).unwrap());
            let b = f.diff(j).unwrap().mul(&g.diff(i).unwrap());
            out = out.add(&p.mul(&a.sub(&b)));
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, j, p) in self.entries() {
            out.set(i, j, p.scale(s)).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> PoissonJson {
        PoissonJson {
            dim: self.dim,
            entries: self.entries().map(|(i, j, p)| PoissonEntryJson { i, j, poly: PolyJson::from_poly(p) }).collect(),
        }
    }

    pub fn from_json(j: &PoissonJson) -> Result<Self, PoissonError> {
        let mut entries = Vec::with_capacity(j.entries.len());
        for e in &j.entries {
            let p: QPoly = e.poly.to_poly()?;
            if p.dim() != j.dim {
                return Err(PoissonError::DimMismatch { expected: j.dim, found: p.dim() });
            }
            entries.push((e.i, e.j, p));
        }
        Self::from_entries(j.dim, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonEntryJson {
    pub i: usize,
    pub j: usize,
    pub poly: PolyJson,
}

/// `{"dim": n, "entries": [{"i", "j", "poly"}]}`, i<j only on output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonJson {
    pub dim: usize,
    pub entries: Vec<PoissonEntryJson>,
}
