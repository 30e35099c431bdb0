use super::{Brane, PoissonError, PoissonStructure, RelativeMultivector, VectorFieldPoly};
use crate::polyalg::QPoly;

/// J^{jkl} = Σ_i π^{ij}∂_iπ^{kl} + π^{il}∂_iπ^{jk} + π^{ik}∂_iπ^{lj}, for any index triple.
pub fn jacobi_component(pi: &PoissonStructure, j: usize, k: usize, l: usize) -> QPoly {
    let n = pi.dim();
    let mut out = QPoly::zero(n);
    for i in 1..=n {
        for (a, b, c) in [(j, k, l), (l, j, k), (k, l, j)] {
            let lead = pi.get(i, a);
            if lead.is_zero() {
                continue;
            }
            out = out.add(&lead.mul(&pi.get(b, c).diff(i).unwrap()));
        }
    }
    out
}

/// The trivector of Jacobi residuals; π is Poisson iff it is zero.
pub fn jacobiator(pi: &PoissonStructure) -> RelativeMultivector {
    let n = pi.dim();
    let mut out = RelativeMultivector::zero(n, 3);
    for j in 1..=n {
        for k in j + 1..=n {
            for l in k + 1..=n {
                out.set(&[j, k, l], jacobi_component(pi, j, k, l));
            }
        }
    }
    out
}

/// π^{μν} vanishes on C for all conormal μ, ν.
pub fn check_coisotropic(pi: &PoissonStructure, c: &Brane) -> bool {
    first_violation(pi, c).is_none()
}

fn first_violation(pi: &PoissonStructure, c: &Brane) -> Option<(usize, usize)> {
    let keep = c.keep_mask();
    let con = c.conormal();
    for (a, &mu) in con.iter().enumerate() {
        for &nu in &con[a + 1..] {
            if !pi.get(mu, nu).restrict(&keep).is_zero() {
                return Some((mu, nu));
            }
        }
    }
    None
}

/// E^μ = π^{μi}∂_i for each conormal μ, restricted to C.
///
/// Conormal components vanish on C by coisotropy, so each field is tangent to C.
pub fn characteristic_fields(pi: &PoissonStructure, c: &Brane) -> Result<Vec<(usize, VectorFieldPoly)>, PoissonError> {
    let keep = c.keep_mask();
    Ok(characteristic_fields_ambient(pi, c)?.into_iter().map(|(mu, e)| (mu, e.restrict(&keep))).collect())
}

/// E^μ = π^{μi}∂_i on all of M, unrestricted; graph vertices differentiate
/// these in every direction before evaluation on C.
pub fn characteristic_fields_ambient(
    pi: &PoissonStructure,
    c: &Brane,
) -> Result<Vec<(usize, VectorFieldPoly)>, PoissonError> {
    if let Some((mu, nu)) = first_violation(pi, c) {
        return Err(PoissonError::NotCoisotropic { mu, nu });
    }
    let n = pi.dim();
    Ok(c.conormal()
        .into_iter()
        .map(|mu| {
            let comps = (1..=n).map(|i| pi.get(mu, i)).collect();
            (mu, VectorFieldPoly::new(comps).expect("components share dim"))
        })
        .collect())
}

/// E^μ f = 0 on C for every conormal μ.
pub fn is_invariant(f: &QPoly, pi: &PoissonStructure, c: &Brane) -> Result<bool, PoissonError> {
    if f.dim() != pi.dim() {
        return Err(PoissonError::DimMismatch { expected: pi.dim(), found: f.dim() });
    }
    if let Some(mu) = c.conormal().into_iter().find(|&mu| f.depends_on(mu)) {
        return Err(PoissonError::ConormalDependence(mu));
    }
    let keep = c.keep_mask();
    Ok(characteristic_fields(pi, c)?.iter().all(|(_, e)| e.apply(f).restrict(&keep).is_zero()))
}

/// Every component with all indices conormal vanishes on C.
pub fn relative_membership(alpha: &RelativeMultivector, c: &Brane) -> bool {
    let keep = c.keep_mask();
    alpha
        .components()
        .filter(|(idx, _)| idx.iter().all(|&i| !c.is_tangent(i)))
        .all(|(_, p)| p.restrict(&keep).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::q;

    fn x(n: usize, i: usize) -> QPoly {
        QPoly::var(n, i).unwrap()
    }

    fn so3() -> PoissonStructure {
        PoissonStructure::from_entries(3, [(1, 2, x(3, 3)), (2, 3, x(3, 1)), (3, 1, x(3, 2))]).unwrap()
    }

    fn symplectic4() -> PoissonStructure {
        PoissonStructure::from_entries(4, [(1, 2, QPoly::one(4)), (3, 4, QPoly::one(4))]).unwrap()
    }

    #[test]
    fn constant_structure_is_poisson() {
        assert!(jacobiator(&symplectic4()).is_zero());
    }

    #[test]
    fn so3_is_poisson() {
        assert!(jacobiator(&so3()).is_zero());
    }

    #[test]
    fn non_poisson_residual() {
        let sq = x(3, 1).mul(&x(3, 1));
        let pi = PoissonStructure::from_entries(3, [(1, 2, sq), (1, 3, x(3, 3))]).unwrap();
        let j = jacobiator(&pi);
        // Independent hand expansion: only π^{13}∂₁π^{12} survives.
        assert_eq!(j.get(&[1, 2, 3]), x(3, 1).mul(&x(3, 3)).scale(&q(2)));
    }

    #[test]
    fn coisotropy_examples() {
        let lie2 = PoissonStructure::from_entries(2, [(1, 2, x(2, 1))]).unwrap();
        assert!(check_coisotropic(&lie2, &Brane::from_conormal(2, &[2]).unwrap()));
        let lag = Brane::from_conormal(4, &[3, 4]).unwrap();
        assert!(!check_coisotropic(&symplectic4(), &lag));
        assert!(check_coisotropic(&symplectic4(), &Brane::from_conormal(4, &[2, 4]).unwrap()));
    }

    #[test]
    fn characteristic_field_examples() {
        let moyal = PoissonStructure::from_entries(2, [(1, 2, QPoly::one(2))]).unwrap();
        let e = characteristic_fields(&moyal, &Brane::from_conormal(2, &[2]).unwrap()).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].0, 2);
        assert_eq!(e[0].1.comps(), &[QPoly::one(2).neg(), QPoly::zero(2)]);

        let e = characteristic_fields(&so3(), &Brane::from_conormal(3, &[3]).unwrap()).unwrap();
        assert_eq!(e[0].1.comps(), &[x(3, 2), x(3, 1).neg(), QPoly::zero(3)]);

        let z = PoissonStructure::zero(3);
        let e = characteristic_fields(&z, &Brane::from_conormal(3, &[1, 2]).unwrap()).unwrap();
        assert!(e.iter().all(|(_, v)| v.is_zero()));

        let lag = Brane::from_conormal(4, &[3, 4]).unwrap();
        assert!(matches!(
            characteristic_fields(&symplectic4(), &lag),
            Err(PoissonError::NotCoisotropic { mu: 3, nu: 4 })
        ));
    }

    #[test]
    fn invariance_examples() {
        let c = Brane::from_conormal(3, &[3]).unwrap();
        let r2 = x(3, 1).mul(&x(3, 1)).add(&x(3, 2).mul(&x(3, 2)));
        assert!(is_invariant(&r2, &so3(), &c).unwrap());
        assert!(!is_invariant(&x(3, 1), &so3(), &c).unwrap());
        assert!(is_invariant(&x(3, 1), &PoissonStructure::zero(3), &c).unwrap());
        assert!(matches!(is_invariant(&x(3, 3), &so3(), &c), Err(PoissonError::ConormalDependence(3))));
    }

    #[test]
    fn membership_examples() {
        let lag = Brane::from_conormal(4, &[3, 4]).unwrap();
        assert!(!relative_membership(&(&symplectic4()).into(), &lag));
        let c = Brane::from_conormal(3, &[3]).unwrap();
        assert!(relative_membership(&(&so3()).into(), &c));
        let tangent = VectorFieldPoly::new(vec![x(3, 2), QPoly::zero(3), x(3, 3)]).unwrap();
        assert!(relative_membership(&(&tangent).into(), &c));
        let transverse = VectorFieldPoly::coordinate(3, 3);
        assert!(!relative_membership(&(&transverse).into(), &c));
    }
}
