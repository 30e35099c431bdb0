use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{bidiff_from_graph, OperatorError};
use crate::graphs::{enumerate_iter, survives, AdmGraph, BraneConfig, Geometry, KindSet, Scheme, DEFAULT_CAP};
use crate::poisson::{check_coisotropic, jacobiator, Brane, PoissonError, PoissonStructure, VectorFieldPoly};
use crate::polyalg::{APoly, ASeries, Approx, Coeff, MultiDiffOp, QPoly, Rational};
use crate::weights::WeightSource;

/// Which brane of a two-brane configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    C0,
    C1,
}

type FamilyKey = (usize, usize, usize, Scheme);
type OpKey = (String, Scheme, usize);

/// Deformed products for a Poisson structure and one or two branes,
/// truncated at a fixed ε order.
///
/// Structural graph data (surviving graphs, assembled operators) is cached
/// per instance; weights come from the shared [`WeightSource`].
pub struct DeformedProduct {
    pi: PoissonStructure,
    branes: BraneConfig,
    order: usize,
    cap: usize,
    weights: Arc<WeightSource>,
    families: Mutex<HashMap<FamilyKey, Arc<Vec<AdmGraph>>>>,
    ops: Mutex<HashMap<OpKey, Arc<MultiDiffOp<Rational>>>>,
}

impl std::fmt::Debug for DeformedProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DeformedProduct").field("branes", &self.branes).field("order", &self.order).finish()
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

impl DeformedProduct {
    fn build(
        pi: PoissonStructure,
        branes: BraneConfig,
        order: usize,
        weights: Arc<WeightSource>,
    ) -> Result<Self, OperatorError> {
        if branes.dim() != pi.dim() {
            return Err(PoissonError::DimMismatch { expected: pi.dim(), found: branes.dim() }.into());
        }
        if !jacobiator(&pi).is_zero() {
            return Err(OperatorError::NotPoisson);
        }
        let cs: Vec<&Brane> = match &branes {
            BraneConfig::Single(c) => vec![c],
            BraneConfig::Two(c0, c1) => vec![c0, c1],
        };
        for c in cs {
            if !check_coisotropic(&pi, c) {
                let conormal = c.conormal();
                let (mu, nu) = conormal
                    .iter()
                    .flat_map(|&m| conormal.iter().map(move |&n| (m, n)))
                    .find(|&(m, n)| !pi.get(m, n).restrict(&c.keep_mask()).is_zero())
                    .unwrap_or((0, 0));
                return Err(PoissonError::NotCoisotropic { mu, nu }.into());
            }
        }
        Ok(DeformedProduct {
            pi,
            branes,
            order,
            cap: DEFAULT_CAP,
            weights,
            families: Mutex::new(HashMap::new()),
            ops: Mutex::new(HashMap::new()),
        })
    }

    /// Star product on the reduced algebra of a single coisotropic brane.
    pub fn single(
        pi: PoissonStructure,
        c: Brane,
        order: usize,
        weights: Arc<WeightSource>,
    ) -> Result<Self, OperatorError> {
        Self::build(pi, BraneConfig::Single(c), order, weights)
    }

    /// Module products for a pair of coisotropic branes.
    pub fn two(
        pi: PoissonStructure,
        c0: Brane,
        c1: Brane,
        order: usize,
        weights: Arc<WeightSource>,
    ) -> Result<Self, OperatorError> {
        Self::build(pi, BraneConfig::Two(c0, c1), order, weights)
    }

    /// Raises the enumeration cap on ordinary vertices (default 3).
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn pi(&self) -> &PoissonStructure {
        &self.pi
    }

    pub fn branes(&self) -> &BraneConfig {
        &self.branes
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.pi.dim()
    }

    pub fn weights(&self) -> &Arc<WeightSource> {
        &self.weights
    }

    /// The single-brane algebra of one side, sharing this instance's weights.
    pub fn algebra(&self, side: Side) -> Result<DeformedProduct, OperatorError> {
        let BraneConfig::Two(c0, c1) = &self.branes else {
            return Err(OperatorError::Config("two-brane"));
        };
        let c = if side == Side::C0 { c0 } else { c1 };
        Ok(Self::single(self.pi.clone(), c.clone(), self.order, self.weights.clone())?.with_cap(self.cap))
    }

    /// The brane functions are finally evaluated on: C, or C₀ ∩ C₁.
    pub fn evaluation_brane(&self) -> Brane {
        match &self.branes {
            BraneConfig::Single(c) => c.clone(),
            BraneConfig::Two(c0, c1) => c0.intersect(c1),
        }
    }

    pub(crate) fn keep(&self) -> Vec<bool> {
        self.evaluation_brane().keep_mask()
    }

    /// Surviving graphs with `ordinary` π-vertices, `n_xi` field vertices and `n_b` boundary slots.
    pub(crate) fn family(
        &self,
        ordinary: usize,
        n_xi: usize,
        n_b: usize,
        scheme: Scheme,
    ) -> Result<Arc<Vec<AdmGraph>>, OperatorError> {
        let key = (ordinary, n_xi, n_b, scheme);
        if let Some(f) = self.families.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let (kinds, geometry) = match self.branes {
            BraneConfig::Single(_) => (KindSet::Single, Geometry::HalfPlane),
            BraneConfig::Two(..) => (KindSet::Two, Geometry::Quadrant),
        };
        let gs: Vec<AdmGraph> = enumerate_iter(ordinary + n_xi, n_xi, n_b, kinds, geometry, self.cap)?
            .filter(|g| survives(g, &self.branes, scheme))
            .collect();
        log::debug!("family ({ordinary},{n_xi},{n_b},{scheme}): {} survivors", gs.len());
        let gs = Arc::new(gs);
        self.families.lock().unwrap().insert(key, gs.clone());
        Ok(gs)
    }

    /// B_Γ for a graph without field vertices, cached.
    fn op(&self, g: &AdmGraph, scheme: Scheme) -> Arc<MultiDiffOp<Rational>> {
        let key = (g.key(), scheme, 0);
        if let Some(op) = self.ops.lock().unwrap().get(&key) {
            return op.clone();
        }
        let op = Arc::new(bidiff_from_graph(g, &self.pi, &self.branes, &[], &self.keep()));
        self.ops.lock().unwrap().insert(key, op.clone());
        op
    }

    /// Σ_{k ≤ order} εᵏ/k! Σ_Γ w_Γ B_Γ(a, b) for graphs with two boundary slots.
    fn binary(&self, scheme: Scheme, a: &APoly, b: &APoly, order: usize) -> Result<ASeries, OperatorError> {
        let dim = self.dim();
        let mut out = ASeries::zero(dim, order);
        for k in 0..=order {
            let fam = self.family(k, 0, 2, scheme)?;
            let mut needed: Vec<&AdmGraph> = Vec::new();
            let mut vals: Vec<APoly> = Vec::new();
            for g in fam.iter() {
                let v = self.op(g, scheme).apply(&[a.clone(), b.clone()])?;
                if !v.is_zero() {
                    needed.push(g);
                    vals.push(v);
                }
            }
            let ws = self.weights.resolve(&needed, scheme)?;
            let inv = Approx::exact(1.0 / factorial(k));
            let c = out.coeff_mut(k);
            for (w, v) in ws.iter().zip(&vals) {
                if w.is_zero() {
                    continue;
                }
                *c = c.add(&v.scale(&w.mul(&inv)));
            }
        }
        Ok(out)
    }

    /// Series version: Σ_{i+j+k=n} εⁿ/k! Σ w_Γ B_Γ(aᵢ, bⱼ), truncated at `order`.
    fn binary_series(&self, scheme: Scheme, a: &ASeries, b: &ASeries) -> Result<ASeries, OperatorError> {
        let order = self.order.min(a.order()).min(b.order());
        let mut out = ASeries::zero(self.dim(), order);
        for i in 0..=order {
            for j in 0..=order - i {
                if a.coeff(i).is_zero() || b.coeff(j).is_zero() {
                    continue;
                }
                let s = self.binary(scheme, a.coeff(i), b.coeff(j), order - i - j)?;
                for k in 0..=order - i - j {
                    let c = out.coeff_mut(i + j + k);
                    *c = c.add(s.coeff(k));
                }
            }
        }
        Ok(out)
    }

    fn require_on(&self, f: &QPoly, c: &Brane, what: &str) -> Result<(), OperatorError> {
        if f.dim() != self.dim() {
            return Err(PoissonError::DimMismatch { expected: self.dim(), found: f.dim() }.into());
        }
        if let Some(mu) = c.conormal().into_iter().find(|&mu| f.depends_on(mu)) {
            return Err(OperatorError::Domain(format!("{what} depends on the conormal coordinate x{mu}")));
        }
        Ok(())
    }

    fn single_brane(&self) -> Result<&Brane, OperatorError> {
        match &self.branes {
            BraneConfig::Single(c) => Ok(c),
            BraneConfig::Two(..) => Err(OperatorError::Config("single-brane")),
        }
    }

    fn two_branes(&self) -> Result<(&Brane, &Brane), OperatorError> {
        match &self.branes {
            BraneConfig::Two(c0, c1) => Ok((c0, c1)),
            BraneConfig::Single(_) => Err(OperatorError::Config("two-brane")),
        }
    }

    /// f ⋆ g through εᴷ. Both arguments must be functions on C.
    pub fn star(&self, f: &QPoly, g: &QPoly) -> Result<ASeries, OperatorError> {
        let c = self.single_brane()?;
        self.require_on(f, c, "f")?;
        self.require_on(g, c, "g")?;
        self.binary(Scheme::HalfPlane, &f.convert(), &g.convert(), self.order)
    }

    /// ⋆ extended ε-bilinearly to truncated series on C.
    pub fn star_series(&self, a: &ASeries, b: &ASeries) -> Result<ASeries, OperatorError> {
        self.single_brane()?;
        self.binary_series(Scheme::HalfPlane, a, b)
    }

    /// ψ ⋆₀ f with ψ on C₀ ∩ C₁ and f on C₀.
    pub fn mod_right(&self, psi: &QPoly, f: &QPoly) -> Result<ASeries, OperatorError> {
        let (c0, c1) = self.two_branes()?;
        self.require_on(psi, &c0.intersect(c1), "ψ")?;
        self.require_on(f, c0, "f")?;
        self.binary(Scheme::QuadrantW0, &psi.convert(), &f.convert(), self.order)
    }

    pub fn mod_right_series(&self, psi: &ASeries, f: &ASeries) -> Result<ASeries, OperatorError> {
        self.two_branes()?;
        self.binary_series(Scheme::QuadrantW0, psi, f)
    }

    /// f ⋆₁ ψ with f on C₁ and ψ on C₀ ∩ C₁.
    pub fn mod_left(&self, f: &QPoly, psi: &QPoly) -> Result<ASeries, OperatorError> {
        let (c0, c1) = self.two_branes()?;
        self.require_on(f, c1, "f")?;
        self.require_on(psi, &c0.intersect(c1), "ψ")?;
        self.binary(Scheme::QuadrantW1, &f.convert(), &psi.convert(), self.order)
    }

    pub fn mod_left_series(&self, f: &ASeries, psi: &ASeries) -> Result<ASeries, OperatorError> {
        self.two_branes()?;
        self.binary_series(Scheme::QuadrantW1, f, psi)
    }

    /// Operators B_Γ for graphs with field vertices; not cached since fields vary.
    pub(crate) fn field_op(&self, g: &AdmGraph, fields: &[&VectorFieldPoly]) -> MultiDiffOp<Rational> {
        bidiff_from_graph(g, &self.pi, &self.branes, fields, &self.keep())
    }

    /// The scheme used for graphs with a single boundary slot.
    pub(crate) fn unary_scheme(&self) -> Scheme {
        match self.branes {
            BraneConfig::Single(_) => Scheme::HalfPlane,
            BraneConfig::Two(..) => Scheme::QuadrantCorner,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{q, qf};

    fn x(n: usize, i: usize) -> QPoly {
        QPoly::var(n, i).unwrap()
    }

    fn moyal(order: usize) -> DeformedProduct {
        let pi = PoissonStructure::from_entries(2, [(1, 2, QPoly::one(2))]).unwrap();
        DeformedProduct::single(pi, Brane::full(2), order, Arc::new(WeightSource::exact())).unwrap()
    }

    fn approx_eq(a: &APoly, b: &QPoly) -> bool {
        a.sub(&b.convert()).vanishes_within(1e-12)
    }

    #[test]
    fn moyal_squares() {
        let d = moyal(2);
        let (x1, x2) = (x(2, 1), x(2, 2));
        let s = d.star(&x1.mul(&x1), &x2.mul(&x2)).unwrap();
        assert!(approx_eq(s.coeff(0), &x1.mul(&x1).mul(&x2).mul(&x2)));
        assert!(approx_eq(s.coeff(1), &x1.mul(&x2).scale(&q(2))));
        assert!(approx_eq(s.coeff(2), &QPoly::constant(2, qf(1, 2))));
    }

    #[test]
    fn unit_is_neutral() {
        let d = moyal(2);
        let f = x(2, 1).mul(&x(2, 2)).add(&x(2, 2));
        let s = d.star(&QPoly::one(2), &f).unwrap();
        assert!(approx_eq(s.coeff(0), &f));
        assert!(s.coeff(1).is_zero() && s.coeff(2).is_zero());
    }

    #[test]
    fn rejects_non_poisson_and_non_coisotropic() {
        let n = 3;
        let bad = PoissonStructure::from_entries(n, [(1, 2, x(n, 1).mul(&x(n, 1))), (1, 3, x(n, 3))]).unwrap();
        let w = Arc::new(WeightSource::exact());
        assert!(matches!(DeformedProduct::single(bad, Brane::full(n), 1, w.clone()), Err(OperatorError::NotPoisson)));
        let sym = PoissonStructure::from_entries(4, [(1, 2, QPoly::one(4)), (3, 4, QPoly::one(4))]).unwrap();
        let c = Brane::from_conormal(4, &[3, 4]).unwrap();
        assert!(matches!(
            DeformedProduct::single(sym, c, 1, w),
            Err(OperatorError::Poisson(PoissonError::NotCoisotropic { .. }))
        ));
    }

    #[test]
    fn conormal_dependence_rejected() {
        let pi = PoissonStructure::from_entries(2, [(1, 2, QPoly::one(2))]).unwrap();
        let d = DeformedProduct::single(pi, Brane::from_conormal(2, &[2]).unwrap(), 1, Arc::new(WeightSource::exact()))
            .unwrap();
        assert!(matches!(d.star(&x(2, 2), &x(2, 1)), Err(OperatorError::Domain(_))));
    }
}
