use std::collections::BTreeMap;

use super::PoissonError;
use crate::polyalg::QPoly;

/// Polynomial vector field Σ ξ^i ∂_i on ℝⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldPoly {
    comps: Vec<QPoly>,
}

impl VectorFieldPoly {
    pub fn new(comps: Vec<QPoly>) -> Result<Self, PoissonError> {
        let dim = comps.len();
        if let Some(bad) = comps.iter().find(|p| p.dim() != dim) {
            return Err(PoissonError::DimMismatch { expected: dim, found: bad.dim() });
        }
        Ok(VectorFieldPoly { comps })
    }

    pub fn zero(dim: usize) -> Self {
        VectorFieldPoly { comps: vec![QPoly::zero(dim); dim] }
    }

    /// The coordinate field ∂_i, 1-based.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.comps[i - 1] = QPoly::one(dim);
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    /// ξ^i, 1-based.
    pub fn comp(&self, i: usize) -> &QPoly {
        &self.comps[i - 1]
    }

    pub fn comps(&self) -> &[QPoly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(QPoly::is_zero)
    }

    /// ξ(f) = ξ^i ∂_i f.
    pub fn apply(&self, f: &QPoly) -> QPoly {
        self.comps
            .iter()
            .enumerate()
            .fold(QPoly::zero(self.dim()), |acc, (i, c)| acc.add(&c.mul(&f.diff(i + 1).unwrap())))
    }

    pub fn add(&self, other: &Self) -> Self {
        VectorFieldPoly { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &crate::polyalg::Rational) -> Self {
        VectorFieldPoly { comps: self.comps.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn restrict(&self, keep: &[bool]) -> Self {
        VectorFieldPoly { comps: self.comps.iter().map(|c| c.restrict(keep)).collect() }
    }
}

/// Totally antisymmetric d-index tensor with polynomial components.
///
/// Stored on strictly increasing index tuples; other orderings are
/// recovered with the permutation sign.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeMultivector {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, QPoly>,
}

impl RelativeMultivector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        RelativeMultivector { dim, degree, comps: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sorts `idx`, returning the permutation sign, or `None` on a repeated index.
    fn canonical(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
        let mut v = idx.to_vec();
        let mut odd = false;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some((v, odd))
        }
    }

    pub fn set(&mut self, idx: &[usize], p: QPoly) {
        assert_eq!(idx.len(), self.degree);
        assert!(idx.iter().all(|&i| i >= 1 && i <= self.dim), "index out of range");
        let Some((key, odd)) = Self::canonical(idx) else {
            assert!(p.is_zero(), "diagonal components of an antisymmetric tensor vanish");
            return;
        };
        let p = if odd { p.neg() } else { p };
        if p.is_zero() {
            self.comps.remove(&key);
        } else {
            self.comps.insert(key, p);
        }
    }

    pub fn get(&self, idx: &[usize]) -> QPoly {
        match Self::canonical(idx) {
            None => QPoly::zero(self.dim),
            Some((key, odd)) => {
                let p = self.comps.get(&key).cloned().unwrap_or_else(|| QPoly::zero(self.dim));
                if odd {
                    p.neg()
                } else {
                    p
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components on increasing index tuples.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &QPoly)> {
        self.comps.iter()
    }
}

impl From<&super::PoissonStructure> for RelativeMultivector {
    fn from(pi: &super::PoissonStructure) -> Self {
        let mut a = RelativeMultivector::zero(pi.dim(), 2);
        for (i, j, p) in pi.entries() {
            a.set(&[i, j], p.clone());
        }
        a
    }
}

impl From<&VectorFieldPoly> for RelativeMultivector {
    fn from(v: &VectorFieldPoly) -> Self {
        let mut a = RelativeMultivector::zero(v.dim(), 1);
        for (i, c) in v.comps().iter().enumerate() {
            a.set(&[i + 1], c.clone());
        }
        a
    }
}
