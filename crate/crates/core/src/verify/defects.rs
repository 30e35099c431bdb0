use crate::operators::{DeformedProduct, OperatorError, Side};
use crate::polyalg::{ASeries, QPoly};

/// A defect series with its norms: the maximum absolute coefficient
/// (residual) and the maximum propagated error, overall and per ε order.
#[derive(Clone, Debug)]
pub struct Defect {
    pub series: ASeries,
}

impl Defect {
    pub fn residual(&self) -> f64 {
        self.series.max_abs()
    }

    pub fn stderr(&self) -> f64 {
        self.series.max_err()
    }

    pub fn per_order(&self) -> Vec<(f64, f64)> {
        self.series.coeffs().iter().map(|p| (p.max_abs(), p.max_err())).collect()
    }

    /// residual ≤ max(3σ, tol)
    pub fn within(&self, tol: f64) -> bool {
        self.residual() <= (3.0 * self.stderr()).max(tol)
    }
}

fn constant(p: &QPoly, order: usize) -> ASeries {
    ASeries::constant(p.convert(), order)
}

/// (f⋆g)⋆h − f⋆(g⋆h) through the product's order.
pub fn associativity_defect(f: &QPoly, g: &QPoly, h: &QPoly, d: &DeformedProduct) -> Result<Defect, OperatorError> {
    let k = d.order();
    let left = d.star_series(&d.star(f, g)?, &constant(h, k))?;
    let right = d.star_series(&constant(f, k), &d.star(g, h)?)?;
    Ok(Defect { series: left.sub(&right) })
}

/// (f⋆₁ψ)⋆₀g − f⋆₁(ψ⋆₀g) with f on C₁, ψ on C₀ ∩ C₁, g on C₀.
pub fn bimodule_defect(f: &QPoly, psi: &QPoly, g: &QPoly, d: &DeformedProduct) -> Result<Defect, OperatorError> {
    let k = d.order();
    let left = d.mod_right_series(&d.mod_left(f, psi)?, &constant(g, k))?;
    let right = d.mod_left_series(&constant(f, k), &d.mod_right(psi, g)?)?;
    Ok(Defect { series: left.sub(&right) })
}

/// (ψ⋆₀f)⋆₀g − ψ⋆₀(f⋆g) with ⋆ the product on C₀.
pub fn right_module_defect(psi: &QPoly, f: &QPoly, g: &QPoly, d: &DeformedProduct) -> Result<Defect, OperatorError> {
    let k = d.order();
    let alg = d.algebra(Side::C0)?;
    let left = d.mod_right_series(&d.mod_right(psi, f)?, &constant(g, k))?;
    let right = d.mod_right_series(&constant(psi, k), &alg.star(f, g)?)?;
    Ok(Defect { series: left.sub(&right) })
}

/// (f⋆g)⋆₁ψ − f⋆₁(g⋆₁ψ) with ⋆ the product on C₁.
pub fn left_module_defect(f: &QPoly, g: &QPoly, psi: &QPoly, d: &DeformedProduct) -> Result<Defect, OperatorError> {
    let k = d.order();
    let alg = d.algebra(Side::C1)?;
    let left = d.mod_left_series(&alg.star(f, g)?, &constant(psi, k))?;
    let right = d.mod_left_series(&constant(f, k), &d.mod_left(g, psi)?)?;
    Ok(Defect { series: left.sub(&right) })
}

/// ε-coefficient of f⋆g − g⋆f minus the reduced bracket {f, g}|_C,
/// returned as a one-term defect series.
pub fn classical_limit_check(f: &QPoly, g: &QPoly, d: &DeformedProduct) -> Result<Defect, OperatorError> {
    if d.order() < 1 {
        return Err(OperatorError::Domain("classical limit needs order ≥ 1".into()));
    }
    let fg = d.star(f, g)?;
    let gf = d.star(g, f)?;
    let keep = d.evaluation_brane().keep_mask();
    let bracket = d.pi().bracket(f, g).restrict(&keep);
    let c = fg.coeff(1).sub(gf.coeff(1)).sub(&bracket.convert());
    Ok(Defect { series: ASeries::new(vec![c]) })
}
