//! Shared test oracles.
#![allow(dead_code)]

use branequant::poisson::PoissonStructure;
use branequant::polyalg::{qf, QPoly};

pub fn x(n: usize, i: usize) -> QPoly {
    QPoly::var(n, i).unwrap()
}

fn d(p: &QPoly, i: usize) -> QPoly {
    p.diff(i).unwrap()
}

/// Bidifferential terms of the order-2 universal formula in ħ for a
/// Poisson tensor π, written out index by index with no graph machinery.
pub fn oracle_terms(pi: &PoissonStructure, f: &QPoly, g: &QPoly) -> [QPoly; 3] {
    let n = pi.dim();
    let p = |i: usize, j: usize| pi.get(i, j);
    let mut b1 = QPoly::zero(n);
    let mut b2 = QPoly::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            let pij = p(i, j);
            if pij.is_zero() {
                continue;
            }
            b1 = b1.add(&pij.mul(&d(f, i)).mul(&d(g, j)));
            for k in 1..=n {
                for l in 1..=n {
                    let pkl = p(k, l);
                    let t1 = pij.mul(&pkl).mul(&d(&d(f, i), k)).mul(&d(&d(g, j), l)).scale(&qf(1, 2));
                    let dj = d(&pkl, j);
                    let t2 = pij
                        .mul(&dj)
                        .mul(&d(&d(f, i), k).mul(&d(g, l)).sub(&d(f, k).mul(&d(&d(g, i), l))))
                        .scale(&qf(1, 3));
                    let t3 = d(&pij, l).mul(&d(&pkl, j)).mul(&d(f, i)).mul(&d(g, k)).scale(&qf(-1, 6));
                    b2 = b2.add(&t1).add(&t2).add(&t3);
                }
            }
        }
    }
    [f.mul(g), b1, b2]
}

/// f ⋆ g through ε² with ħ = ε/2.
pub fn oracle_star(pi: &PoissonStructure, f: &QPoly, g: &QPoly) -> [QPoly; 3] {
    let [b0, b1, b2] = oracle_terms(pi, f, g);
    [b0, b1.scale(&qf(1, 2)), b2.scale(&qf(1, 4))]
}

/// ε-bilinear extension to series [a0, a1, a2] ⋆ [b0, b1, b2].
pub fn oracle_star_series(pi: &PoissonStructure, a: &[QPoly; 3], b: &[QPoly; 3]) -> [QPoly; 3] {
    let n = pi.dim();
    let mut out = [QPoly::zero(n), QPoly::zero(n), QPoly::zero(n)];
    for i in 0..3 {
        for j in 0..3 - i {
            let s = oracle_star(pi, &a[i], &b[j]);
            for (k, c) in s.iter().enumerate().take(3 - i - j) {
                out[i + j + k] = out[i + j + k].add(c);
            }
        }
    }
    out
}

pub fn so3() -> PoissonStructure {
    let n = 3;
    PoissonStructure::from_entries(n, [(1, 2, x(n, 3)), (2, 3, x(n, 1)), (3, 1, x(n, 2))]).unwrap()
}
