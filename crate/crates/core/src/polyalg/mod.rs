//! Exact polynomials over ℚ, truncated ε-series and multidifferential operators.

mod coeff;
mod json;
mod multidiff;
mod poly;
mod series;

use thiserror::Error;

pub use coeff::{parse_rational, rational_to_f64, Approx, Coeff, CoeffInto, Rational};
pub use json::{PolyJson, SeriesJson, StderrEntry, TermJson};
pub use multidiff::MultiDiffOp;
pub use poly::{Exps, Poly, QPoly};
pub use series::{series_mul, EpsSeries};

/// Polynomial with float coefficients carrying a propagated error bound.
pub type APoly = Poly<Approx>;
pub type ASeries = EpsSeries<Approx>;
pub type QSeries = EpsSeries<Rational>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("variable index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("arity mismatch: operator takes {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("series truncated at order {have}, order {need} requested")]
    Truncation { have: usize, need: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(dim: usize) -> impl Strategy<Value = QPoly> {
        prop::collection::vec((prop::collection::vec(0u32..4, dim), -5i64..6, 1i64..4), 0..6)
            .prop_map(move |ts| QPoly::from_terms(dim, ts.into_iter().map(|(e, n, d)| (e, qf(n, d)))).unwrap())
    }

    fn arb_series(dim: usize, order: usize) -> impl Strategy<Value = QSeries> {
        prop::collection::vec(arb_poly(dim), order + 1).prop_map(EpsSeries::new)
    }

    fn arb_op(dim: usize, arity: usize) -> impl Strategy<Value = MultiDiffOp<Rational>> {
        prop::collection::vec((prop::collection::vec(prop::collection::vec(0u32..3, dim), arity), arb_poly(dim)), 0..5)
            .prop_map(move |ts| {
                let mut d = MultiDiffOp::zero(dim, arity);
                for (m, c) in ts {
                    d.add_term(m, c);
                }
                d
            })
    }

    proptest! {
        #[test]
        fn partials_commute(p in arb_poly(3), i in 1usize..=3, j in 1usize..=3) {
            prop_assert_eq!(p.diff(i).unwrap().diff(j).unwrap(), p.diff(j).unwrap().diff(i).unwrap());
        }

        #[test]
        fn add_sub_is_exact(p in arb_poly(3), r in arb_poly(3)) {
            prop_assert_eq!(p.add(&r).sub(&r), p);
        }

        #[test]
        fn multidiff_linear_in_each_slot(
            d in arb_op(2, 2), a in arb_poly(2), b in arb_poly(2), c in arb_poly(2), s in -4i64..5,
        ) {
            let lhs = d.apply(&[a.add(&b.scale(&q(s))), c.clone()]).unwrap();
            let rhs = d.apply(&[a.clone(), c.clone()]).unwrap().add(&d.apply(&[b.clone(), c.clone()]).unwrap().scale(&q(s)));
            prop_assert_eq!(lhs, rhs);
            let lhs = d.apply(&[c.clone(), a.add(&b.scale(&q(s)))]).unwrap();
            let rhs = d.apply(&[c.clone(), a]).unwrap().add(&d.apply(&[c, b]).unwrap().scale(&q(s)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn series_mul_associative(a in arb_series(2, 2), b in arb_series(2, 2), c in arb_series(2, 2)) {
            let l = series_mul(&series_mul(&a, &b, 2).unwrap(), &c, 2).unwrap();
            let r = series_mul(&a, &series_mul(&b, &c, 2).unwrap(), 2).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn poly_json_round_trip(p in arb_poly(3)) {
            let j = PolyJson::from_poly(&p);
            let s = serde_json::to_string(&j).unwrap();
            let back: PolyJson = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back.to_poly::<Rational>().unwrap(), p);
        }
    }
}
