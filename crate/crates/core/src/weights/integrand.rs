use nalgebra::DMatrix;

use super::angle::{form_gradient, EdgeForm};
use super::layout::{Gauge, Layout};
use super::{Scheme, WeightError};
use crate::graphs::{AdmGraph, Target};

/// Precomputed edge data for repeated integrand evaluation.
#[derive(Clone, Debug)]
pub struct Integrand {
    pub(crate) layout: Layout,
    edges: Vec<(usize, Target, EdgeForm)>,
}

impl Integrand {
    pub fn new(g: &AdmGraph, scheme: Scheme, gauge: Gauge) -> Result<Self, WeightError> {
        let layout = Layout::new(g, scheme, gauge)?;
        let edges =
            g.edges.iter().enumerate().map(|(e, edge)| (g.source(e), edge.target, EdgeForm::of(edge.kind))).collect();
        Ok(Integrand { layout, edges })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Jacobian of the edge angles with respect to the moduli; row r is edge r.
    pub fn jacobian(&self, q: &[f64]) -> DMatrix<f64> {
        let n = self.layout.moduli;
        let mut m = DMatrix::zeros(n, n);
        let mut row = vec![0.0; n];
        for (r, &(src, tgt, form)) in self.edges.iter().enumerate() {
            row.iter_mut().for_each(|x| *x = 0.0);
            let zs = self.layout.position(Target::Aerial(src), q);
            let zt = self.layout.position(tgt, q);
            let g = form_gradient(form, zs, zt);
            self.layout.chain(src, g[0], g[1], q, &mut row);
            if let Target::Aerial(t) = tgt {
                self.layout.chain(t, g[2], g[3], q, &mut row);
            }
            for (c, x) in row.iter().enumerate() {
                m[(r, c)] = *x;
            }
        }
        m
    }

    /// Top-form coefficient det(∂θ_r/∂q_c), without orientation or normalization.
    pub fn eval(&self, q: &[f64]) -> f64 {
        if self.layout.moduli == 0 {
            return 1.0;
        }
        self.jacobian(q).determinant()
    }
}

/// The weight integrand of `g` at moduli `q` in the default gauge of `scheme`.
pub fn integrand(g: &AdmGraph, q: &[f64], scheme: Scheme) -> Result<f64, WeightError> {
    let it = Integrand::new(g, scheme, Gauge::default())?;
    if q.len() != it.layout.moduli {
        return Err(WeightError::DimensionMismatch { moduli: q.len(), edges: g.edge_count() });
    }
    Ok(it.eval(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::decode_key;

    #[test]
    fn wedge_at_i_matches_finite_difference_rows() {
        let g = decode_key("1;0;2;H;v1:(B1,s),(B2,s)").unwrap();
        let v = integrand(&g, &[0.0, 1.0], Scheme::HalfPlane).unwrap();
        let phi = |x: f64, y: f64, b: f64| {
            let z = num_complex::Complex64::new(x, y);
            let w = num_complex::Complex64::new(b, 0.0);
            super::super::angle_halfplane(z, w).unwrap()
        };
        let h = 1e-6;
        let d = |b: f64| {
            [(phi(h, 1.0, b) - phi(-h, 1.0, b)) / (2.0 * h), (phi(0.0, 1.0 + h, b) - phi(0.0, 1.0 - h, b)) / (2.0 * h)]
        };
        let (r1, r2) = (d(0.0), d(1.0));
        let fd = r1[0] * r2[1] - r1[1] * r2[0];
        assert!(v.abs() > 1e-3);
        assert!((v - fd).abs() < 1e-6, "{v} vs {fd}");
    }

    #[test]
    fn swapped_rows_negate() {
        let a = decode_key("1;0;2;H;v1:(B1,s),(B2,s)").unwrap();
        let b = decode_key("1;0;2;H;v1:(B2,s),(B1,s)").unwrap();
        let q = [0.37, 0.81];
        let (x, y) = (integrand(&a, &q, Scheme::HalfPlane).unwrap(), integrand(&b, &q, Scheme::HalfPlane).unwrap());
        assert!((x + y).abs() < 1e-12);
    }

    #[test]
    fn repeated_edges_vanish() {
        let g = decode_key("2;0;2;H;v1:(2,s),(2,s);v2:(B1,s),(B2,s)").unwrap();
        assert!(integrand(&g, &[0.3, 0.4, 0.9, 1.3], Scheme::HalfPlane).unwrap().abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let g = decode_key("1;0;2;H;v1:(B1,s),(B2,s)").unwrap();
        assert!(matches!(integrand(&g, &[0.3], Scheme::HalfPlane), Err(WeightError::DimensionMismatch { .. })));
    }
}
