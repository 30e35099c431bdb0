//! The fixed example library the suites run over.

use crate::poisson::{Brane, PoissonStructure};
use crate::polyalg::{qf, QPoly};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub pi: PoissonStructure,
    /// One brane C, or the pair (C₀, C₁).
    pub branes: Vec<Brane>,
    pub poisson: bool,
    pub coisotropic: bool,
    /// Classically invariant functions on the evaluation brane.
    pub functions: Vec<QPoly>,
}

fn x(n: usize, i: usize) -> QPoly {
    QPoly::var(n, i).expect("index in range")
}

fn conormal(n: usize, c: &[usize]) -> Brane {
    Brane::from_conormal(n, c).expect("indices in range")
}

fn moyal() -> PoissonStructure {
    PoissonStructure::from_entries(2, [(1, 2, QPoly::one(2))]).unwrap()
}

fn symplectic4() -> PoissonStructure {
    PoissonStructure::from_entries(4, [(1, 2, QPoly::one(4)), (3, 4, QPoly::one(4))]).unwrap()
}

/// {x¹, x²} = x¹: the dual of the two-dimensional nonabelian Lie algebra.
fn lie2() -> PoissonStructure {
    PoissonStructure::from_entries(2, [(1, 2, x(2, 1))]).unwrap()
}

fn so3() -> PoissonStructure {
    let n = 3;
    PoissonStructure::from_entries(n, [(1, 2, x(n, 3)), (2, 3, x(n, 1)), (3, 1, x(n, 2))]).unwrap()
}

/// π¹² = (x¹)², π¹³ = x³: fails Jacobi.
fn non_poisson() -> PoissonStructure {
    let n = 3;
    PoissonStructure::from_entries(n, [(1, 2, x(n, 1).mul(&x(n, 1))), (1, 3, x(n, 3))]).unwrap()
}

fn single(name: &'static str, pi: PoissonStructure, c: Brane, functions: Vec<QPoly>) -> Fixture {
    Fixture { name, pi, branes: vec![c], poisson: true, coisotropic: true, functions }
}

pub fn library() -> Vec<Fixture> {
    let r2 = x(3, 1).mul(&x(3, 1)).add(&x(3, 2).mul(&x(3, 2)));
    vec![
        single(
            "moyal-plane",
            moyal(),
            Brane::full(2),
            vec![x(2, 1).mul(&x(2, 1)), x(2, 1).mul(&x(2, 2)), x(2, 2).mul(&x(2, 2))],
        ),
        single("moyal-line", moyal(), conormal(2, &[2]), vec![QPoly::one(2)]),
        single("symplectic4-lagrangian", symplectic4(), conormal(4, &[2, 4]), vec![QPoly::one(4)]),
        single(
            "symplectic4-hyperplane",
            symplectic4(),
            conormal(4, &[4]),
            vec![x(4, 1).mul(&x(4, 2)), x(4, 1).mul(&x(4, 1)), x(4, 2)],
        ),
        Fixture { coisotropic: false, ..single("symplectic4-symplectic", symplectic4(), conormal(4, &[3, 4]), vec![]) },
        single("lie2", lie2(), conormal(2, &[2]), vec![QPoly::one(2)]),
        single("so3", so3(), Brane::full(3), vec![x(3, 1), x(3, 2), x(3, 1).mul(&x(3, 3))]),
        single(
            "so3-plane",
            so3(),
            conormal(3, &[3]),
            vec![r2.clone(), r2.mul(&r2), r2.add(&QPoly::constant(3, qf(1, 2)))],
        ),
        Fixture { poisson: false, ..single("non-poisson", non_poisson(), Brane::full(3), vec![]) },
        Fixture {
            name: "moyal-bimodule",
            pi: moyal(),
            branes: vec![Brane::full(2), conormal(2, &[2])],
            poisson: true,
            coisotropic: true,
            functions: vec![x(2, 1), x(2, 1).mul(&x(2, 1))],
        },
        Fixture {
            name: "moyal-bimodule-full",
            pi: moyal(),
            branes: vec![Brane::full(2), Brane::full(2)],
            poisson: true,
            coisotropic: true,
            functions: vec![x(2, 1), x(2, 1).mul(&x(2, 2)), x(2, 2)],
        },
        Fixture {
            name: "so3-character",
            pi: so3(),
            branes: vec![Brane::full(3), conormal(3, &[1, 2, 3])],
            poisson: true,
            coisotropic: true,
            functions: vec![QPoly::one(3)],
        },
    ]
}

pub fn get(name: &str) -> Option<Fixture> {
    library().into_iter().find(|f| f.name == name)
}
