use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    /// pass: residual ≤ max(3σ, tol) with 3σ ≤ tol; inconclusive: within
    /// the bound but the noise alone exceeds tol; fail otherwise.
    pub fn classify(residual: f64, tolerance: f64, stderr: f64) -> Status {
        let noise = 3.0 * stderr;
        if residual > noise.max(tolerance) {
            Status::Fail
        } else if noise > tolerance {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }
}

/// Whether a check is meant to pass, or is a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    #[default]
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    pub stderr: f64,
    #[serde(default)]
    pub expect: Expect,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(label: impl Into<String>, residual: f64, tolerance: f64, stderr: f64) -> Self {
        Check {
            label: label.into(),
            status: Status::classify(residual, tolerance, stderr),
            residual,
            tolerance,
            stderr,
            expect: Expect::Pass,
            note: None,
        }
    }

    /// A yes/no check with no numerical noise.
    pub fn boolean(label: impl Into<String>, ok: bool) -> Self {
        Check::new(label, if ok { 0.0 } else { 1.0 }, 0.5, 0.0)
    }

    pub fn expect_fail(mut self) -> Self {
        self.expect = Expect::Fail;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Matches its expectation; inconclusive checks never count as met.
    pub fn met(&self) -> bool {
        match self.expect {
            Expect::Pass => self.status == Status::Pass,
            Expect::Fail => self.status == Status::Fail,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub samples: u64,
    pub exact_weights: bool,
    pub cache_snapshot: String,
    pub integrated: usize,
    pub cache_hits: usize,
    pub samples_used: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub order: usize,
    pub checks: Vec<Check>,
    pub provenance: Provenance,
}

impl Report {
    /// Every check met its expectation.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::met)
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.met())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classification() {
        assert_eq!(Status::classify(0.0, 1e-2, 0.0), Status::Pass);
        assert_eq!(Status::classify(5e-3, 1e-2, 1e-3), Status::Pass);
        assert_eq!(Status::classify(5e-3, 1e-2, 1e-2), Status::Inconclusive);
        assert_eq!(Status::classify(0.5, 1e-2, 1e-3), Status::Fail);
    }

    #[test]
    fn expected_fail_is_met_by_failing() {
        let c = Check::boolean("x", false).expect_fail();
        assert!(c.met());
        assert!(!Check::boolean("x", true).expect_fail().met());
    }

    proptest! {
        #[test]
        fn report_json_round_trip(
            vals in proptest::collection::vec((any::<f64>().prop_filter("finite", |v| v.is_finite()), 0.0..1.0f64, 0.0..1.0f64), 0..6),
            seed in any::<u64>(),
        ) {
            let checks = vals
                .iter()
                .enumerate()
                .map(|(i, &(r, t, s))| Check::new(format!("c{i}"), r.abs(), t, s))
                .collect();
            let rep = Report {
                suite: "s".into(),
                order: 2,
                checks,
                provenance: Provenance { seed, samples: 1000, cache_snapshot: "abc".into(), ..Default::default() },
            };
            let back: Report = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
            prop_assert_eq!(back, rep);
        }
    }
}
