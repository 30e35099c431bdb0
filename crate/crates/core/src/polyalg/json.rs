use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use super::poly::Poly;
use super::series::EpsSeries;
use super::PolyError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

/// `{"dim": n, "terms": [{"coeff": "p/q", "exps": [...]}]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub dim: usize,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly<C: Coeff>(p: &Poly<C>) -> Self {
        PolyJson {
            dim: p.dim(),
            terms: p.terms().map(|(e, c)| TermJson { coeff: c.to_coeff_string(), exps: e.clone() }).collect(),
        }
    }

    pub fn to_poly<C: Coeff>(&self) -> Result<Poly<C>, PolyError> {
        if self.dim == 0 {
            return Err(PolyError::Parse("dim must be positive".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c =
                C::parse_coeff(&t.coeff).ok_or_else(|| PolyError::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            terms.push((t.exps.clone(), c));
        }
        Poly::from_terms(self.dim, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StderrEntry {
    pub exps: Vec<u32>,
    pub stderr: f64,
}

/// `{"order": K, "coeffs": [...], "stderr": [[{"exps", "stderr"}...]...]}`
///
/// The stderr block lists, per ε-order, the propagated error of every
/// stored monomial; exact series have empty blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<PolyJson>,
    #[serde(default)]
    pub stderr: Vec<Vec<StderrEntry>>,
}

impl SeriesJson {
    pub fn from_series<C: Coeff>(s: &EpsSeries<C>) -> Self {
        SeriesJson {
            order: s.order(),
            coeffs: s.coeffs().iter().map(PolyJson::from_poly).collect(),
            stderr: s
                .coeffs()
                .iter()
                .map(|p| {
                    p.terms()
                        .filter(|(_, c)| c.error() > 0.0)
                        .map(|(e, c)| StderrEntry { exps: e.clone(), stderr: c.error() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_series<C: Coeff>(&self) -> Result<EpsSeries<C>, PolyError> {
        if self.coeffs.len() != self.order + 1 {
            return Err(PolyError::Parse(format!(
                "series of order {} needs {} coefficients, found {}",
                self.order,
                self.order + 1,
                self.coeffs.len()
            )));
        }
        let coeffs = self.coeffs.iter().map(PolyJson::to_poly).collect::<Result<Vec<_>, _>>()?;
        let dim = coeffs[0].dim();
        if let Some(bad) = coeffs.iter().find(|p| p.dim() != dim) {
            return Err(PolyError::DimMismatch { expected: dim, found: bad.dim() });
        }
        Ok(EpsSeries::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{qf, Approx, QPoly, Rational};

    #[test]
    fn parses_documented_format() {
        let s = r#"{"dim": 2, "terms": [{"coeff": "1/2", "exps": [1, 0]}, {"coeff": "-3", "exps": [0, 2]}]}"#;
        let p: QPoly = serde_json::from_str::<PolyJson>(s).unwrap().to_poly().unwrap();
        assert_eq!(p.coeff(&[1, 0]), qf(1, 2));
        assert_eq!(p.coeff(&[0, 2]), qf(-3, 1));
    }

    #[test]
    fn rejects_bad_terms() {
        let wrong_len = r#"{"dim": 2, "terms": [{"coeff": "1", "exps": [1]}]}"#;
        let j: PolyJson = serde_json::from_str(wrong_len).unwrap();
        assert!(j.to_poly::<Rational>().is_err());
        let bad_coeff = r#"{"dim": 1, "terms": [{"coeff": "x", "exps": [1]}]}"#;
        let j: PolyJson = serde_json::from_str(bad_coeff).unwrap();
        assert!(j.to_poly::<Rational>().is_err());
    }

    #[test]
    fn series_stderr_block() {
        let p = Poly::from_terms(1, [(vec![1], Approx::new(0.5, 0.01))]).unwrap();
        let s = EpsSeries::new(vec![Poly::one(1), p]);
        let j = SeriesJson::from_series(&s);
        assert!(j.stderr[0].is_empty());
        assert_eq!(j.stderr[1], vec![StderrEntry { exps: vec![1], stderr: 0.01 }]);
        let back: EpsSeries<Approx> = j.to_series().unwrap();
        assert_eq!(back.coeff(1).coeff(&[1]).val, 0.5);
    }
}
