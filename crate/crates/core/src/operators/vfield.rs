use nalgebra::{DMatrix, DVector};
use std::collections::BTreeMap;

use super::{DeformedProduct, OperatorError, ZERO_FLOOR};
use crate::graphs::{AdmGraph, BraneConfig, Scheme};
use crate::poisson::{characteristic_fields_ambient, VectorFieldPoly};
use crate::polyalg::{APoly, ASeries, Approx, Coeff, Exps, MultiDiffOp, Poly, QPoly};

/// A truncated ε-series of unary differential operators; `ops[k]` is the εᵏ term.
#[derive(Clone, Debug)]
pub struct OpSeries {
    pub ops: Vec<MultiDiffOp<Approx>>,
}

impl OpSeries {
    pub fn order(&self) -> usize {
        self.ops.len() - 1
    }

    /// (A f)_n = Σ_{j ≤ n} A_j f_{n−j}, truncated at the smaller order.
    pub fn apply(&self, f: &ASeries) -> Result<ASeries, OperatorError> {
        let order = self.order().min(f.order());
        let mut out = ASeries::zero(f.dim(), order);
        for n in 0..=order {
            for j in 0..=n {
                let t = self.ops[j].apply(&[f.coeff(n - j).clone()])?;
                let c = out.coeff_mut(n);
                *c = c.add(&t);
            }
        }
        Ok(out)
    }
}

/// F(E^μ, E^ν) for one conormal pair.
#[derive(Clone, Debug)]
pub struct PairCheck {
    pub mu: usize,
    pub nu: usize,
    pub series: ASeries,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct AssumptionReport {
    pub pairs: Vec<PairCheck>,
    /// Set when the condition holds without computation (codimension ≤ 1).
    pub structural: Option<String>,
}

impl AssumptionReport {
    pub fn pass(&self) -> bool {
        self.pairs.iter().all(|p| p.pass)
    }
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Lifted(ASeries),
    /// No solution within the degree cap; `residual` is the least-squares misfit.
    Obstructed {
        order: usize,
        residual: f64,
    },
}

pub(crate) fn series_vanishes(s: &ASeries) -> bool {
    s.coeffs().iter().all(|p| p.vanishes_within(ZERO_FLOOR))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn monomials(vars: &[usize], dim: usize, max_deg: u32) -> Vec<Exps> {
    let mut out = vec![vec![0u32; dim]];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for e in &out {
            for &v in vars {
                let mut m = e.clone();
                m[v - 1] += 1;
                next.push(m);
            }
        }
        out.extend(next);
        out.sort();
        out.dedup();
    }
    out
}

impl DeformedProduct {
    /// Characteristic fields E^μ = π^{μi}∂_i for the conormal directions
    /// of C (single brane) or of both C₀ and C₁.
    pub fn char_fields(&self) -> Result<Vec<(usize, VectorFieldPoly)>, OperatorError> {
        match self.branes() {
            BraneConfig::Single(c) => Ok(characteristic_fields_ambient(self.pi(), c)?),
            BraneConfig::Two(c0, c1) => Ok((1..=self.dim())
                .filter(|&i| !c0.is_tangent(i) && !c1.is_tangent(i))
                .map(|mu| {
                    let comps = (1..=self.dim()).map(|i| self.pi().get(mu, i)).collect();
                    (mu, VectorFieldPoly::new(comps).expect("components share dim"))
                })
                .collect()),
        }
    }

    /// The quantized vector field A(ξ) = ξ + Σ_k εᵏ/k! Σ w_Γ B_Γ(ξ).
    pub fn op_a(&self, xi: &VectorFieldPoly) -> Result<OpSeries, OperatorError> {
        let scheme = self.unary_scheme();
        let keep = self.keep();
        let mut ops = Vec::with_capacity(self.order() + 1);
        for k in 0..=self.order() {
            let fam = self.family(k, 1, 1, scheme)?;
            let mut needed: Vec<&AdmGraph> = Vec::new();
            let mut terms = Vec::new();
            for g in fam.iter() {
                let op = self.field_op(g, &[xi]);
                if !op.is_zero() {
                    needed.push(g);
                    terms.push(op);
                }
            }
            let ws = self.weights().resolve(&needed, scheme)?;
            let inv = Approx::exact(1.0 / factorial(k));
            let mut acc = MultiDiffOp::with_keep(self.dim(), 1, keep.clone());
            for (w, op) in ws.iter().zip(&terms) {
                if !w.is_zero() {
                    acc = acc.add(&op.convert::<Approx>().scale(&w.mul(&inv)));
                }
            }
            ops.push(acc);
        }
        Ok(OpSeries { ops })
    }

    /// The obstruction form F(ξ, η) = Σ_k εᵏ/k! Σ w_Γ B_Γ(ξ, η), evaluated on C.
    pub fn fn_f(&self, xi: &VectorFieldPoly, eta: &VectorFieldPoly) -> Result<ASeries, OperatorError> {
        if !matches!(self.branes(), BraneConfig::Single(_)) {
            return Err(OperatorError::Config("single-brane"));
        }
        let scheme = Scheme::HalfPlane;
        let mut out = ASeries::zero(self.dim(), self.order());
        for k in 0..=self.order() {
            let fam = self.family(k, 2, 0, scheme)?;
            let mut needed: Vec<&AdmGraph> = Vec::new();
            let mut vals: Vec<QPoly> = Vec::new();
            for g in fam.iter() {
                let v = self.field_op(g, &[xi, eta]).apply::<crate::polyalg::Rational>(&[])?;
                if !v.is_zero() {
                    needed.push(g);
                    vals.push(v);
                }
            }
            let ws = self.weights().resolve(&needed, scheme)?;
            let inv = Approx::exact(1.0 / factorial(k));
            let c = out.coeff_mut(k);
            for (w, v) in ws.iter().zip(&vals) {
                *c = c.add(&v.convert::<Approx>().scale(&w.mul(&inv)));
            }
        }
        Ok(out)
    }

    /// F(E^μ, E^ν) = 0 for all conormal pairs μ < ν. With at most one conormal
    /// direction there are no pairs: F is skew, so F(E^μ, E^μ) = 0 outright.
    pub fn check_assumption(&self) -> Result<AssumptionReport, OperatorError> {
        let fields = self.char_fields()?;
        if fields.len() <= 1 {
            return Ok(AssumptionReport {
                pairs: Vec::new(),
                structural: Some("codimension ≤ 1: only F(E,E), which vanishes by skew-symmetry".into()),
            });
        }
        let mut pairs = Vec::new();
        for (a, (mu, e_mu)) in fields.iter().enumerate() {
            for (nu, e_nu) in &fields[a + 1..] {
                let series = self.fn_f(e_mu, e_nu)?;
                let pass = series_vanishes(&series);
                pairs.push(PairCheck { mu: *mu, nu: *nu, series, pass });
            }
        }
        let structural = if pairs.iter().all(|p| p.series.coeffs().iter().all(Poly::is_zero)) {
            Some("every contributing operator vanishes identically".into())
        } else {
            None
        };
        Ok(AssumptionReport { pairs, structural })
    }

    /// A(E^μ) f for every characteristic field, keyed by μ.
    pub fn invariance_defect(&self, f: &ASeries) -> Result<Vec<(usize, ASeries)>, OperatorError> {
        self.char_fields()?.iter().map(|(mu, e)| Ok((*mu, self.op_a(e)?.apply(f)?))).collect()
    }

    /// Whether f lies in the deformed reduced algebra: A(E^μ) f = 0 for all μ.
    pub fn membership(&self, f: &ASeries) -> Result<bool, OperatorError> {
        Ok(self.invariance_defect(f)?.iter().all(|(_, s)| series_vanishes(s)))
    }

    /// Extends an invariant f₀ to f₀ + εf₁ + … with A(E^μ) f = 0 through the
    /// working order, solving for each fₙ among tangential polynomials of
    /// total degree ≤ `degree_cap` by least squares.
    pub fn lift(&self, f0: &QPoly, degree_cap: u32) -> Result<LiftOutcome, OperatorError> {
        let BraneConfig::Single(c) = self.branes() else {
            return Err(OperatorError::Config("single-brane"));
        };
        if let Some(mu) = c.conormal().into_iter().find(|&mu| f0.depends_on(mu)) {
            return Err(OperatorError::Domain(format!("f₀ depends on the conormal coordinate x{mu}")));
        }
        let dim = self.dim();
        let ops: Vec<OpSeries> = self.char_fields()?.iter().map(|(_, e)| self.op_a(e)).collect::<Result<_, _>>()?;
        let mut f: Vec<APoly> = vec![f0.convert()];
        let r0 = ops.iter().map(|a| a.ops[0].apply(&[f[0].clone()])).collect::<Result<Vec<_>, _>>()?;
        if let Some(bad) = r0.iter().find(|p| !p.vanishes_within(ZERO_FLOOR)) {
            return Ok(LiftOutcome::Obstructed { order: 0, residual: bad.max_abs() });
        }
        let basis = monomials(c.tangent(), dim, degree_cap);
        // Columns: A₀(E^μ) applied to each basis monomial.
        let columns: Vec<Vec<APoly>> = basis
            .iter()
            .map(|m| {
                let p = Poly::monomial(dim, m.clone(), Approx::exact(1.0));
                ops.iter().map(|a| a.ops[0].apply(std::slice::from_ref(&p))).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        for n in 1..=self.order() {
            let mut rhs: Vec<APoly> = vec![Poly::zero(dim); ops.len()];
            for (r, a) in rhs.iter_mut().zip(&ops) {
                for j in 1..=n {
                    *r = r.sub(&a.ops[j].apply(&[f[n - j].clone()])?);
                }
            }
            let mut rows: BTreeMap<(usize, Exps), usize> = BTreeMap::new();
            let mut index = |mu: usize, e: &Exps| {
                let len = rows.len();
                *rows.entry((mu, e.clone())).or_insert(len)
            };
            for col in &columns {
                for (mu, p) in col.iter().enumerate() {
                    p.terms().for_each(|(e, _)| {
                        index(mu, e);
                    });
                }
            }
            for (mu, p) in rhs.iter().enumerate() {
                p.terms().for_each(|(e, _)| {
                    index(mu, e);
                });
            }
            let mut a = DMatrix::<f64>::zeros(rows.len().max(1), basis.len());
            let mut b = DVector::<f64>::zeros(rows.len().max(1));
            for (j, col) in columns.iter().enumerate() {
                for (mu, p) in col.iter().enumerate() {
                    for (e, v) in p.terms() {
                        a[(rows[&(mu, e.clone())], j)] = v.val;
                    }
                }
            }
            let mut rhs_err: f64 = 0.0;
            for (mu, p) in rhs.iter().enumerate() {
                for (e, v) in p.terms() {
                    b[rows[&(mu, e.clone())]] = v.val;
                    rhs_err = rhs_err.max(v.err);
                }
            }
            let svd = a.clone().svd(true, true);
            let sol = svd.solve(&b, 1e-10).map_err(|e| OperatorError::Domain(e.to_string()))?;
            let residual = (&a * &sol - &b).amax();
            if residual > (3.0 * rhs_err).max(ZERO_FLOOR) {
                return Ok(LiftOutcome::Obstructed { order: n, residual });
            }
            let smin = svd.singular_values.iter().copied().filter(|&s| s > 1e-10).fold(f64::INFINITY, f64::min);
            let err = if smin.is_finite() { rhs_err / smin } else { 0.0 };
            let mut fn_ = Poly::zero(dim);
            for (m, &cval) in basis.iter().zip(sol.iter()) {
                if cval.abs() > 1e-14 {
                    fn_.add_term(m.clone(), Approx::new(cval, err));
                }
            }
            f.push(fn_);
        }
        Ok(LiftOutcome::Lifted(ASeries::new(f)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::{Brane, PoissonStructure};
    use crate::weights::WeightSource;
    use std::sync::Arc;

    fn x(n: usize, i: usize) -> QPoly {
        QPoly::var(n, i).unwrap()
    }

    fn lie2(order: usize) -> DeformedProduct {
        let pi = PoissonStructure::from_entries(2, [(1, 2, x(2, 1))]).unwrap();
        DeformedProduct::single(pi, Brane::from_conormal(2, &[2]).unwrap(), order, Arc::new(WeightSource::exact()))
            .unwrap()
    }

    #[test]
    fn leading_term_is_the_field() {
        let d = lie2(0);
        let fields = d.char_fields().unwrap();
        assert_eq!(fields.len(), 1);
        let a = d.op_a(&fields[0].1).unwrap();
        // E² = π^{21}∂₁ = −x¹∂₁ on C
        let got = a.ops[0].apply(&[x(2, 1).convert::<Approx>()]).unwrap();
        assert!(got.add(&x(2, 1).convert()).vanishes_within(1e-12));
    }

    #[test]
    fn obstruction_at_order_zero() {
        let d = lie2(0);
        match d.lift(&x(2, 1), 2).unwrap() {
            LiftOutcome::Obstructed { order, residual } => {
                assert_eq!(order, 0);
                assert!((residual - 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constant_structure_lifts_trivially() {
        let pi = PoissonStructure::from_entries(4, [(1, 2, QPoly::one(4)), (3, 4, QPoly::one(4))]).unwrap();
        let w = Arc::new(WeightSource::exact());
        let d = DeformedProduct::single(pi.clone(), Brane::from_conormal(4, &[4]).unwrap(), 2, w.clone()).unwrap();
        let f0 = x(4, 1).mul(&x(4, 2)).add(&x(4, 1).mul(&x(4, 1)));
        match d.lift(&f0, 3).unwrap() {
            LiftOutcome::Lifted(s) => {
                assert_eq!(s.coeff(0), &f0.convert::<Approx>());
                assert!(s.coeff(1).is_zero() && s.coeff(2).is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        let lag = DeformedProduct::single(pi, Brane::from_conormal(4, &[2, 4]).unwrap(), 2, w).unwrap();
        let rep = lag.check_assumption().unwrap();
        assert!(rep.pass() && rep.structural.is_some());
        assert_eq!(rep.pairs.len(), 1);
    }

    #[test]
    fn monomial_basis_size() {
        assert_eq!(monomials(&[1, 3], 3, 2).len(), 6);
    }
}
