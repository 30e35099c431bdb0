use std::collections::BTreeMap;

use super::coeff::{Coeff, CoeffInto};
use super::poly::{Exps, Poly};
use super::PolyError;

/// A multidifferential operator Σ c(x) ∂^{α₁} ⊗ … ⊗ ∂^{α_arity}.
///
/// `keep` marks the variables that survive evaluation: after differentiating,
/// every argument and the final product are restricted to `x^μ = 0` for the
/// dropped variables.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiDiffOp<C: Coeff> {
    dim: usize,
    arity: usize,
    keep: Vec<bool>,
    terms: BTreeMap<Vec<Exps>, Poly<C>>,
}

impl<C: Coeff> MultiDiffOp<C> {
    pub fn zero(dim: usize, arity: usize) -> Self {
        MultiDiffOp { dim, arity, keep: vec![true; dim], terms: BTreeMap::new() }
    }

    pub fn with_keep(dim: usize, arity: usize, keep: Vec<bool>) -> Self {
        assert_eq!(keep.len(), dim);
        MultiDiffOp { dim, arity, keep, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn keep(&self) -> &[bool] {
        &self.keep
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Exps>, &Poly<C>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, multi: Vec<Exps>, coeff: Poly<C>) {
        assert_eq!(multi.len(), self.arity, "one multiindex per slot");
        assert!(multi.iter().all(|m| m.len() == self.dim));
        if coeff.is_zero() {
            return;
        }
        let coeff = coeff.restrict(&self.keep);
        match self.terms.get_mut(&multi) {
            Some(old) => {
                let s = old.add(&coeff);
                if s.is_zero() {
                    self.terms.remove(&multi);
                } else {
                    *old = s;
                }
            }
            None => {
                if !coeff.is_zero() {
                    self.terms.insert(multi, coeff);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.arity), (other.dim, other.arity));
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::with_keep(self.dim, self.arity, self.keep.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale(s));
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiDiffOp<D> {
        let mut out = MultiDiffOp::with_keep(self.dim, self.arity, self.keep.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.map_coeffs(&f));
        }
        out
    }

    pub fn convert<D: Coeff>(&self) -> MultiDiffOp<D>
    where
        C: CoeffInto<D>,
    {
        self.map_coeffs(|c| c.coeff_into())
    }

    /// Largest derivative order that hits slot `slot` in any term.
    pub fn max_order_in_slot(&self, slot: usize) -> u32 {
        self.terms.keys().map(|m| m[slot].iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Evaluates the operator on `args`: Σ coeff · Π_slot ∂^{α_slot} arg_slot.
    pub fn apply<D: Coeff>(&self, args: &[Poly<D>]) -> Result<Poly<D>, PolyError>
    where
        C: CoeffInto<D>,
    {
        if args.len() != self.arity {
            return Err(PolyError::ArityMismatch { expected: self.arity, found: args.len() });
        }
        if let Some(bad) = args.iter().find(|a| a.dim() != self.dim) {
            return Err(PolyError::DimMismatch { expected: self.dim, found: bad.dim() });
        }
        let mut out = Poly::zero(self.dim);
        'terms: for (multi, coeff) in &self.terms {
            let mut prod: Poly<D> = coeff.convert();
            for (alpha, arg) in multi.iter().zip(args) {
                let d = arg.diff_multi(alpha).restrict(&self.keep);
                if d.is_zero() {
                    continue 'terms;
                }
                prod = prod.mul(&d);
            }
            out = out.add(&prod);
        }
        Ok(out.restrict(&self.keep))
    }
}
