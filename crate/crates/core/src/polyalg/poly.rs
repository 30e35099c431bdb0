use std::collections::BTreeMap;
use std::fmt;

use super::coeff::{Coeff, CoeffInto, Rational};
use super::PolyError;

/// Exponent vector of a monomial, one entry per variable.
pub type Exps = Vec<u32>;

/// Sparse multivariate polynomial in x¹..xⁿ.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty
/// term map.
#[derive(Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    dim: usize,
    terms: BTreeMap<Exps, C>,
}

pub type QPoly = Poly<Rational>;

impl<C: Coeff> Poly<C> {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        Self::monomial(dim, vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, C::one())
    }

    pub fn monomial(dim: usize, exps: Exps, c: C) -> Self {
        assert_eq!(exps.len(), dim, "exponent vector length must equal dim");
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The coordinate function x^var, 1-based.
    pub fn var(dim: usize, var: usize) -> Result<Self, PolyError> {
        check_var(dim, var)?;
        let mut exps = vec![0; dim];
        exps[var - 1] = 1;
        Ok(Self::monomial(dim, exps, C::one()))
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exps, C)>) -> Result<Self, PolyError> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(PolyError::DimMismatch { expected: dim, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: Exps, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in poly add");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(s));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in poly mul");
        let mut out = Self::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    /// Exact partial derivative ∂/∂x^var, 1-based.
    pub fn diff(&self, var: usize) -> Result<Self, PolyError> {
        check_var(self.dim, var)?;
        let i = var - 1;
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.mul(&C::from_i64(e[i] as i64)));
        }
        Ok(out)
    }

    /// ∂^alpha with alpha a multiindex of length dim.
    pub fn diff_multi(&self, alpha: &[u32]) -> Self {
        assert_eq!(alpha.len(), self.dim);
        let mut out = Self::zero(self.dim);
        'terms: for (e, c) in &self.terms {
            let mut factor: i64 = 1;
            let mut e2 = e.clone();
            for (i, &a) in alpha.iter().enumerate() {
                if a > e[i] {
                    continue 'terms;
                }
                for j in 0..a {
                    factor *= (e[i] - j) as i64;
                }
                e2[i] -= a;
            }
            out.add_term(e2, c.mul(&C::from_i64(factor)));
        }
        out
    }

    /// Sets every variable with `keep[i] == false` to zero.
    pub fn restrict(&self, keep: &[bool]) -> Self {
        assert_eq!(keep.len(), self.dim);
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().zip(keep).all(|(&x, &k)| k || x == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Whether some term has a positive exponent in x^var (1-based).
    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var - 1] > 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest exponent of each variable over all terms.
    pub fn max_exponents(&self) -> Exps {
        let mut m = vec![0; self.dim];
        for e in self.terms.keys() {
            for (mi, &x) in m.iter_mut().zip(e) {
                *mi = (*mi).max(x);
            }
        }
        m
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn convert<D: Coeff>(&self) -> Poly<D>
    where
        C: CoeffInto<D>,
    {
        self.map_coeffs(|c| c.coeff_into())
    }

    /// Maximum absolute coefficient value.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Maximum propagated error over coefficients.
    pub fn max_err(&self) -> f64 {
        self.terms.values().map(|c| c.error()).fold(0.0, f64::max)
    }

    /// True when every coefficient satisfies |value| ≤ max(3·err, floor).
    pub fn vanishes_within(&self, floor: f64) -> bool {
        self.terms.values().all(|c| c.magnitude() <= (3.0 * c.error()).max(floor))
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.value() * e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }
}

pub(crate) fn check_var(dim: usize, var: usize) -> Result<(), PolyError> {
    if var == 0 || var > dim {
        Err(PolyError::IndexOutOfRange { index: var, dim })
    } else {
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c.to_coeff_string())?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn x(dim: usize, i: usize) -> QPoly {
        QPoly::var(dim, i).unwrap()
    }

    #[test]
    fn diff_examples() {
        let p = x(3, 1).mul(&x(3, 2));
        assert_eq!(p.diff(1).unwrap(), x(3, 2));
        assert!(x(3, 1).diff(2).unwrap().is_zero());
        let sq = x(3, 3).mul(&x(3, 3));
        assert_eq!(sq.diff(3).unwrap(), x(3, 3).scale(&q(2)));
    }

    #[test]
    fn diff_out_of_range() {
        assert!(matches!(x(2, 1).diff(3), Err(PolyError::IndexOutOfRange { .. })));
        assert!(matches!(x(2, 1).diff(0), Err(PolyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn diff_multi_matches_iterated() {
        let p = x(2, 1).mul(&x(2, 1)).mul(&x(2, 1)).mul(&x(2, 2)).mul(&x(2, 2));
        let d = p.diff(1).unwrap().diff(1).unwrap().diff(2).unwrap();
        assert_eq!(p.diff_multi(&[2, 1]), d);
    }

    #[test]
    fn restrict_drops_conormal_terms() {
        let p = x(3, 1).add(&x(3, 3)).add(&x(3, 1).mul(&x(3, 3)));
        assert_eq!(p.restrict(&[true, true, false]), x(3, 1));
    }

    #[test]
    fn evaluate_signs() {
        let p = x(2, 1).scale(&q(-3)).add(&QPoly::constant(2, q(2)));
        assert_eq!(p.evaluate(&[1.0, 0.0]), -1.0);
    }
}
