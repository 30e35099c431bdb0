//! Order-by-order identity checks and machine-readable reports.

mod defects;
pub mod fixtures;
mod report;
mod suites;

use thiserror::Error;

use crate::operators::OperatorError;

pub use defects::{
    associativity_defect, bimodule_defect, classical_limit_check, left_module_defect, right_module_defect, Defect,
};
pub use report::{Check, Expect, Provenance, Report, Status};
pub use suites::{run_suite, SuiteConfig, SUITES};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}; known suites: {list}", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("expected-fail check {0:?} passed; tolerances are vacuous")]
    VacuousExpectedFail(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}
