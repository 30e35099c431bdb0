use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

/// Ring of polynomial coefficients.
///
/// Three carriers are used: exact rationals for structural data, plain
/// floats, and [`Approx`] values which carry a propagated error bound once
/// Monte Carlo weights enter an expression.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Central estimate as a float.
    fn value(&self) -> f64;

    fn magnitude(&self) -> f64 {
        self.value().abs()
    }

    /// Propagated error bound; zero for exact carriers.
    fn error(&self) -> f64 {
        0.0
    }

    fn to_coeff_string(&self) -> String;
    fn parse_coeff(s: &str) -> Option<Self>;
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses "p", "p/q" or a decimal literal such as "-1.25" into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Rational::from_integer(n));
    }
    // plain decimal, no exponent
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac).parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let q = Rational::new(digits, denom);
    Some(if neg { -q } else { q })
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn value(&self) -> f64 {
        rational_to_f64(self)
    }
    fn to_coeff_string(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn value(&self) -> f64 {
        *self
    }
    fn to_coeff_string(&self) -> String {
        format!("{self:?}")
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        s.trim().parse::<f64>().ok().or_else(|| parse_rational(s).map(|q| rational_to_f64(&q)))
    }
}

/// A float estimate with a linearly propagated absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Approx {
    pub val: f64,
    pub err: f64,
}

impl Approx {
    pub fn new(val: f64, err: f64) -> Self {
        Approx { val, err: err.abs() }
    }

    pub fn exact(val: f64) -> Self {
        Approx { val, err: 0.0 }
    }
}

impl Coeff for Approx {
    fn zero() -> Self {
        Approx::exact(0.0)
    }
    fn one() -> Self {
        Approx::exact(1.0)
    }
    fn is_zero(&self) -> bool {
        self.val == 0.0 && self.err == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        Approx { val: self.val + other.val, err: self.err + other.err }
    }
    fn sub(&self, other: &Self) -> Self {
        Approx { val: self.val - other.val, err: self.err + other.err }
    }
    fn mul(&self, other: &Self) -> Self {
        Approx {
            val: self.val * other.val,
            err: self.val.abs() * other.err + other.val.abs() * self.err + self.err * other.err,
        }
    }
    fn neg(&self) -> Self {
        Approx { val: -self.val, err: self.err }
    }
    fn from_rational(q: &Rational) -> Self {
        Approx::exact(rational_to_f64(q))
    }
    fn value(&self) -> f64 {
        self.val
    }
    fn error(&self) -> f64 {
        self.err
    }
    fn to_coeff_string(&self) -> String {
        format!("{:?}", self.val)
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        f64::parse_coeff(s).map(Approx::exact)
    }
}

impl From<f64> for Approx {
    fn from(v: f64) -> Self {
        Approx::exact(v)
    }
}

/// Lossless-enough conversion between coefficient carriers.
pub trait CoeffInto<T: Coeff> {
    fn coeff_into(&self) -> T;
}

impl<C: Coeff> CoeffInto<C> for C {
    fn coeff_into(&self) -> C {
        self.clone()
    }
}

impl CoeffInto<Approx> for Rational {
    fn coeff_into(&self) -> Approx {
        Approx::from_rational(self)
    }
}

impl CoeffInto<f64> for Rational {
    fn coeff_into(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl CoeffInto<Approx> for f64 {
    fn coeff_into(&self) -> Approx {
        Approx::exact(*self)
    }
}

impl CoeffInto<f64> for Approx {
    fn coeff_into(&self) -> f64 {
        self.val
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_decimal() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-1.25").unwrap(), Rational::new((-5).into(), 4.into()));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn approx_propagates_linearly() {
        let a = Approx::new(2.0, 0.1);
        let b = Approx::new(-3.0, 0.2);
        let s = a.add(&b);
        assert_eq!(s.val, -1.0);
        assert!((s.err - 0.3).abs() < 1e-15);
        let p = a.mul(&b);
        assert_eq!(p.val, -6.0);
        assert!((p.err - (2.0 * 0.2 + 3.0 * 0.1 + 0.02)).abs() < 1e-15);
    }
}
