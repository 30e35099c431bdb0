use serde::{Deserialize, Serialize};

use super::PoissonError;

/// Coordinate subspace {x^μ = 0, μ ∉ I} given by its tangential index set I.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Brane {
    dim: usize,
    tangent: Vec<usize>,
}

impl Brane {
    pub fn new(dim: usize, tangent: impl IntoIterator<Item = usize>) -> Result<Self, PoissonError> {
        let mut t: Vec<usize> = tangent.into_iter().collect();
        t.sort_unstable();
        t.dedup();
        if let Some(&bad) = t.iter().find(|&&i| i == 0 || i > dim) {
            return Err(PoissonError::IndexOutOfRange { index: bad, dim });
        }
        Ok(Brane { dim, tangent: t })
    }

    /// The whole space M.
    pub fn full(dim: usize) -> Self {
        Brane { dim, tangent: (1..=dim).collect() }
    }

    /// The brane {x^μ = 0 for μ in `conormal`}.
    pub fn from_conormal(dim: usize, conormal: &[usize]) -> Result<Self, PoissonError> {
        if let Some(&bad) = conormal.iter().find(|&&i| i == 0 || i > dim) {
            return Err(PoissonError::IndexOutOfRange { index: bad, dim });
        }
        Self::new(dim, (1..=dim).filter(|i| !conormal.contains(i)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tangent(&self) -> &[usize] {
        &self.tangent
    }

    pub fn conormal(&self) -> Vec<usize> {
        (1..=self.dim).filter(|i| !self.is_tangent(*i)).collect()
    }

    pub fn is_tangent(&self, i: usize) -> bool {
        self.tangent.binary_search(&i).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.tangent.len() == self.dim
    }

    pub fn codim(&self) -> usize {
        self.dim - self.tangent.len()
    }

    /// Variable mask for restriction to the brane: `true` on tangential variables.
    pub fn keep_mask(&self) -> Vec<bool> {
        (1..=self.dim).map(|i| self.is_tangent(i)).collect()
    }

    pub fn intersect(&self, other: &Brane) -> Brane {
        assert_eq!(self.dim, other.dim);
        Brane { dim: self.dim, tangent: self.tangent.iter().copied().filter(|&i| other.is_tangent(i)).collect() }
    }

    pub fn to_json(&self) -> BraneJson {
        BraneJson { tangent: self.tangent.clone() }
    }
}

/// `{"tangent": [i1, i2, ...]}`, 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BraneJson {
    pub tangent: Vec<usize>,
}

impl BraneJson {
    pub fn to_brane(&self, dim: usize) -> Result<Brane, PoissonError> {
        Brane::new(dim, self.tangent.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_deduplicated() {
        let c = Brane::new(4, [3, 1, 3]).unwrap();
        assert_eq!(c.tangent(), &[1, 3]);
        assert_eq!(c.conormal(), vec![2, 4]);
        assert_eq!(c.keep_mask(), vec![true, false, true, false]);
        assert!(Brane::new(2, [3]).is_err());
    }

    #[test]
    fn intersection() {
        let a = Brane::full(2);
        let b = Brane::from_conormal(2, &[2]).unwrap();
        assert_eq!(a.intersect(&b), b);
    }
}
