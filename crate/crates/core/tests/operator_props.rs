mod common;

use std::sync::Arc;

use proptest::prelude::*;

use branequant::operators::DeformedProduct;
use branequant::poisson::{Brane, PoissonStructure};
use branequant::polyalg::{q, qf, APoly, Approx, QPoly};
use branequant::verify::associativity_defect;
use branequant::weights::WeightSource;
use common::{so3, x};

fn poly(dim: usize, max_deg: u32) -> impl Strategy<Value = QPoly> {
    proptest::collection::vec((proptest::collection::vec(0..=max_deg, dim), -4i64..=4), 1..5).prop_map(move |ts| {
        let mut p = QPoly::zero(dim);
        for (e, c) in ts {
            if e.iter().sum::<u32>() <= max_deg {
                p.add_term(e, q(c));
            }
        }
        p
    })
}

fn moyal(order: usize) -> DeformedProduct {
    let pi = PoissonStructure::from_entries(2, [(1, 2, QPoly::one(2))]).unwrap();
    DeformedProduct::single(pi, Brane::full(2), order, Arc::new(WeightSource::exact())).unwrap()
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Σₙ (ε/2)ⁿ/n! Σₖ C(n,k)(−1)ᵏ ∂₁ⁿ⁻ᵏ∂₂ᵏ f · ∂₁ᵏ∂₂ⁿ⁻ᵏ g
fn moyal_oracle(f: &QPoly, g: &QPoly, order: u32) -> Vec<QPoly> {
    let mut out = Vec::new();
    let mut fact = 1i64;
    for n in 0..=order {
        if n > 0 {
            fact *= n as i64;
        }
        let mut c = QPoly::zero(2);
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let t = f.diff_multi(&[n - k, k]).mul(&g.diff_multi(&[k, n - k]));
            c = c.add(&t.scale(&q(sign * binom(n, k))));
        }
        out.push(c.scale(&qf(1, fact * (1i64 << n))));
    }
    out
}

fn same(a: &APoly, b: &QPoly) -> bool {
    a.sub(&b.convert::<Approx>()).vanishes_within(1e-9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moyal_matches_closed_form(f in poly(2, 3), g in poly(2, 3)) {
        let s = moyal(2).star(&f, &g).unwrap();
        for (k, want) in moyal_oracle(&f, &g, 2).iter().enumerate() {
            prop_assert!(same(s.coeff(k), want), "order {}: {} vs {}", k, s.coeff(k), want);
        }
    }

    #[test]
    fn moyal_is_associative(f in poly(2, 2), g in poly(2, 2), h in poly(2, 2)) {
        let d = associativity_defect(&f, &g, &h, &moyal(2)).unwrap();
        prop_assert_eq!(d.residual(), 0.0);
    }

    #[test]
    fn unit_is_two_sided(f in poly(2, 3)) {
        let d = moyal(2);
        let one = QPoly::one(2);
        for s in [d.star(&one, &f).unwrap(), d.star(&f, &one).unwrap()] {
            prop_assert!(same(s.coeff(0), &f));
            prop_assert!(s.coeff(1).is_zero() && s.coeff(2).is_zero());
        }
    }

    #[test]
    fn first_order_term_is_half_the_bracket(f in poly(3, 2), g in poly(3, 2)) {
        let pi = so3();
        let d = DeformedProduct::single(pi.clone(), Brane::full(3), 1, Arc::new(WeightSource::exact())).unwrap();
        let s = d.star(&f, &g).unwrap();
        prop_assert!(same(s.coeff(0), &f.mul(&g)));
        prop_assert!(same(s.coeff(1), &pi.bracket(&f, &g).scale(&qf(1, 2))));
    }

    #[test]
    fn zero_structure_gives_the_pointwise_product(f in poly(2, 3), g in poly(2, 3)) {
        let d = DeformedProduct::single(PoissonStructure::zero(2), Brane::full(2), 2, Arc::new(WeightSource::exact())).unwrap();
        let s = d.star(&f, &g).unwrap();
        prop_assert!(same(s.coeff(0), &f.mul(&g)));
        prop_assert!(s.coeff(1).is_zero() && s.coeff(2).is_zero());
    }

    /// On a constant structure with a linear brane, A(E^μ) is E^μ with no corrections.
    #[test]
    fn constant_case_fields_are_undeformed(f in poly(4, 3)) {
        let pi = PoissonStructure::from_entries(4, [(1, 2, QPoly::one(4)), (3, 4, QPoly::one(4))]).unwrap();
        let c = Brane::from_conormal(4, &[2, 4]).unwrap();
        let keep = c.keep_mask();
        let d = DeformedProduct::single(pi, c, 2, Arc::new(WeightSource::exact())).unwrap();
        for (_, e) in d.char_fields().unwrap() {
            let a = d.op_a(&e).unwrap();
            let fa: APoly = f.restrict(&keep).convert();
            prop_assert!(same(&a.ops[0].apply(std::slice::from_ref(&fa)).unwrap(), &e.apply(&f.restrict(&keep)).restrict(&keep)));
            prop_assert!(a.ops[1].is_zero() && a.ops[2].is_zero());
        }
    }
}

#[test]
fn moyal_oracle_sanity() {
    let f = x(2, 1).mul(&x(2, 1));
    let g = x(2, 2).mul(&x(2, 2));
    let o = moyal_oracle(&f, &g, 2);
    assert_eq!(o[1], x(2, 1).mul(&x(2, 2)).scale(&q(2)));
    assert_eq!(o[2], QPoly::constant(2, qf(1, 2)));
}
