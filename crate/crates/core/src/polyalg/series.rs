use super::coeff::{Coeff, CoeffInto};
use super::poly::Poly;
use super::PolyError;

/// Truncated formal power series in ε with polynomial coefficients.
///
/// ε is never substituted; `coeffs[k]` is the coefficient of εᵏ and the
/// truncation order is `coeffs.len() - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsSeries<C: Coeff> {
    coeffs: Vec<Poly<C>>,
}

impl<C: Coeff> EpsSeries<C> {
    pub fn new(coeffs: Vec<Poly<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the ε⁰ coefficient");
        let dim = coeffs[0].dim();
        assert!(coeffs.iter().all(|p| p.dim() == dim), "series coefficients must share dim");
        EpsSeries { coeffs }
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        EpsSeries { coeffs: vec![Poly::zero(dim); order + 1] }
    }

    /// p + 0·ε + … + 0·ε^order
    pub fn constant(p: Poly<C>, order: usize) -> Self {
        let dim = p.dim();
        let mut coeffs = vec![Poly::zero(dim); order + 1];
        coeffs[0] = p;
        EpsSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    pub fn coeff(&self, k: usize) -> &Poly<C> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly<C>] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut Poly<C> {
        &mut self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Result<Self, PolyError> {
        if order > self.order() {
            return Err(PolyError::Truncation { have: self.order(), need: order });
        }
        Ok(EpsSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        EpsSeries { coeffs: (0..=order).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        EpsSeries { coeffs: self.coeffs.iter().map(Poly::neg).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        EpsSeries { coeffs: self.coeffs.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&Poly<C>) -> Poly<D>) -> EpsSeries<D> {
        EpsSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn convert<D: Coeff>(&self) -> EpsSeries<D>
    where
        C: CoeffInto<D>,
    {
        self.map(|p| p.convert())
    }

    /// Max absolute coefficient over all orders and monomials.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Poly::max_abs).fold(0.0, f64::max)
    }

    pub fn max_err(&self) -> f64 {
        self.coeffs.iter().map(Poly::max_err).fold(0.0, f64::max)
    }
}

/// Truncated Cauchy product: the εᵏ coefficient is Σ_{i+j=k} aᵢ·bⱼ for k ≤ order.
pub fn series_mul<C: Coeff>(a: &EpsSeries<C>, b: &EpsSeries<C>, order: usize) -> Result<EpsSeries<C>, PolyError> {
    let have = a.order().min(b.order());
    if have < order {
        return Err(PolyError::Truncation { have, need: order });
    }
    let dim = a.dim();
    let coeffs = (0..=order)
        .map(|k| (0..=k).fold(Poly::zero(dim), |acc, i| acc.add(&a.coeffs[i].mul(&b.coeffs[k - i]))))
        .collect();
    Ok(EpsSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{QPoly, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn difference_of_squares() {
        let one = QPoly::one(1);
        let a = EpsSeries::new(vec![one.clone(), one.clone(), QPoly::zero(1)]);
        let b = EpsSeries::new(vec![one.clone(), one.scale(&q(-1)), QPoly::zero(1)]);
        let c = series_mul(&a, &b, 2).unwrap();
        assert_eq!(c.coeff(0), &one);
        assert!(c.coeff(1).is_zero());
        assert_eq!(c.coeff(2), &one.scale(&q(-1)));
    }

    #[test]
    fn unit_and_hand_expansion() {
        let x1 = QPoly::var(2, 1).unwrap();
        let x2 = QPoly::var(2, 2).unwrap();
        let a = EpsSeries::new(vec![x1.clone(), x2.clone()]);
        let unit = EpsSeries::constant(QPoly::one(2), 1);
        assert_eq!(series_mul(&a, &unit, 1).unwrap(), a);
        let b = EpsSeries::constant(x2.clone(), 1);
        let c = series_mul(&a, &b, 1).unwrap();
        assert_eq!(c.coeff(0), &x1.mul(&x2));
        assert_eq!(c.coeff(1), &x2.mul(&x2));
    }

    #[test]
    fn insufficient_truncation() {
        let a = EpsSeries::constant(QPoly::one(1), 1);
        let b = EpsSeries::constant(QPoly::one(1), 2);
        assert!(matches!(series_mul(&a, &b, 2), Err(PolyError::Truncation { have: 1, need: 2 })));
    }
}
