use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::fixtures::{self, Fixture};
use super::{
    associativity_defect, bimodule_defect, classical_limit_check, left_module_defect, right_module_defect, Check,
    Defect, Expect, Provenance, Report, Status, VerifyError,
};
use crate::graphs::{decode_key, Scheme};
use crate::operators::{DeformedProduct, OperatorError};
use crate::poisson::{jacobiator, Brane};
use crate::polyalg::QPoly;
use crate::weights::{weight_mc_with, McOptions, WeightMode, WeightSource};

pub const SUITES: &[&str] =
    &["jacobi", "coisotropy", "assumption", "star-associativity", "bimodule", "classical-limit", "weights-calibration"];

/// Everything a suite run depends on.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub order: usize,
    pub weights: Arc<WeightSource>,
    /// Options for direct integrations (calibration); also recorded as provenance.
    pub mc: McOptions,
    /// Overrides the default tolerance (1e-9 with exact weights, 1e-2 otherwise).
    pub tolerance: Option<f64>,
}

impl SuiteConfig {
    fn exact(&self) -> bool {
        matches!(self.weights.mode(), WeightMode::Exact)
    }

    fn tol(&self) -> f64 {
        self.tolerance.unwrap_or(if self.exact() { 1e-9 } else { 1e-2 })
    }
}

type Job<'a> = Box<dyn Fn() -> Result<Check, VerifyError> + Send + Sync + 'a>;

fn run_jobs(jobs: Vec<Job<'_>>) -> Result<Vec<Check>, VerifyError> {
    #[cfg(feature = "parallel")]
    let out = jobs.par_iter().map(|j| j()).collect();
    #[cfg(not(feature = "parallel"))]
    let out = jobs.iter().map(|j| j()).collect();
    out
}

fn defect_check(label: String, d: &Defect, tol: f64) -> Check {
    Check::new(label, d.residual(), tol, d.stderr())
}

fn single(fx: &Fixture, cfg: &SuiteConfig) -> Result<DeformedProduct, OperatorError> {
    DeformedProduct::single(fx.pi.clone(), fx.branes[0].clone(), cfg.order, cfg.weights.clone())
}

fn two(fx: &Fixture, order: usize, cfg: &SuiteConfig) -> Result<DeformedProduct, OperatorError> {
    DeformedProduct::two(fx.pi.clone(), fx.branes[0].clone(), fx.branes[1].clone(), order, cfg.weights.clone())
}

fn fixture(name: &str) -> Fixture {
    fixtures::get(name).expect("fixture in library")
}

fn jacobi_jobs() -> Vec<Job<'static>> {
    let mut seen = Vec::new();
    let mut jobs: Vec<Job> = Vec::new();
    for fx in fixtures::library() {
        if seen.contains(&fx.pi) {
            continue;
        }
        seen.push(fx.pi.clone());
        jobs.push(Box::new(move || {
            let r = jacobiator(&fx.pi).components().map(|(_, p)| p.max_abs()).fold(0.0, f64::max);
            let c = Check::new(format!("jacobi {}", fx.name), r, 0.0, 0.0);
            Ok(if fx.poisson { c } else { c.expect_fail() })
        }));
    }
    jobs
}

fn coisotropy_residual(fx: &Fixture, c: &Brane) -> f64 {
    let keep = c.keep_mask();
    let conormal = c.conormal();
    conormal
        .iter()
        .flat_map(|&m| conormal.iter().map(move |&n| (m, n)))
        .map(|(m, n)| fx.pi.get(m, n).restrict(&keep).max_abs())
        .fold(0.0, f64::max)
}

fn coisotropy_jobs() -> Vec<Job<'static>> {
    let mut jobs: Vec<Job> = Vec::new();
    for fx in fixtures::library().into_iter().filter(|f| f.poisson) {
        jobs.push(Box::new(move || {
            let r = fx.branes.iter().map(|c| coisotropy_residual(&fx, c)).fold(0.0, f64::max);
            let c = Check::new(format!("coisotropy {}", fx.name), r, 0.0, 0.0);
            Ok(if fx.coisotropic { c } else { c.expect_fail() })
        }));
    }
    jobs
}

fn assumption_jobs(cfg: &SuiteConfig) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job> = Vec::new();
    for fx in fixtures::library().into_iter().filter(|f| f.poisson && f.coisotropic && f.branes.len() == 1) {
        jobs.push(Box::new(move || {
            let rep = single(&fx, cfg)?.check_assumption()?;
            let residual = rep.pairs.iter().map(|p| p.series.max_abs()).fold(0.0, f64::max);
            let stderr = rep.pairs.iter().map(|p| p.series.max_err()).fold(0.0, f64::max);
            let c = Check::new(format!("assumption {}", fx.name), residual, cfg.tol(), stderr);
            Ok(match rep.structural {
                Some(s) => c.with_note(s),
                None => c,
            })
        }));
    }
    jobs
}

fn associativity_jobs(cfg: &SuiteConfig) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job> = Vec::new();
    for name in ["moyal-plane", "symplectic4-hyperplane", "so3"] {
        jobs.push(Box::new(move || {
            let fx = fixture(name);
            let d = single(&fx, cfg)?;
            let [f, g, h] = [&fx.functions[0], &fx.functions[1], &fx.functions[2]];
            let def = associativity_defect(f, g, h, &d)?;
            Ok(defect_check(format!("associativity {name} ({f})⋆({g})⋆({h})"), &def, cfg.tol()))
        }));
    }
    jobs
}

fn bimodule_jobs(cfg: &SuiteConfig) -> Vec<Job<'_>> {
    let x = |n: usize, i: usize| QPoly::var(n, i).expect("index in range");
    let mut jobs: Vec<Job> = Vec::new();
    // C₀ = M, C₁ = {x² = 0}: the reduced algebra of C₁ is the constants.
    jobs.push(Box::new(move || {
        let d = two(&fixture("moyal-bimodule"), cfg.order, cfg)?;
        let g = x(2, 1).mul(&x(2, 2)).add(&x(2, 2));
        let def = bimodule_defect(&QPoly::one(2), &x(2, 1), &g, &d)?;
        let order0 = def.per_order()[0].0;
        Ok(defect_check("bimodule moyal C₀=M C₁={x²=0}".into(), &def, cfg.tol())
            .with_note(format!("order-0 defect {order0:e}")))
    }));
    jobs.push(Box::new(move || {
        let d = two(&fixture("moyal-bimodule"), cfg.order, cfg)?;
        let def = right_module_defect(&x(2, 1), &x(2, 2), &x(2, 1).mul(&x(2, 2)), &d)?;
        Ok(defect_check("right module moyal C₀=M C₁={x²=0}".into(), &def, cfg.tol()))
    }));
    jobs.push(Box::new(move || {
        let d = two(&fixture("moyal-bimodule-full"), cfg.order, cfg)?;
        let def = bimodule_defect(&x(2, 1), &x(2, 1).mul(&x(2, 2)), &x(2, 2), &d)?;
        Ok(defect_check("bimodule moyal C₀=C₁=M".into(), &def, cfg.tol()))
    }));
    jobs.push(Box::new(move || {
        let d = two(&fixture("moyal-bimodule-full"), cfg.order, cfg)?;
        let def = left_module_defect(&x(2, 2), &x(2, 1), &x(2, 1).mul(&x(2, 2)), &d)?;
        Ok(defect_check("left module moyal C₀=C₁=M".into(), &def, cfg.tol()))
    }));
    jobs.push(Box::new(move || {
        let d = two(&fixture("so3-character"), cfg.order.min(1), cfg)?;
        let one = QPoly::one(3);
        let f = x(3, 1).add(&one);
        let g = x(3, 2).add(&one).add(&one);
        let def = right_module_defect(&one, &f, &g, &d)?;
        Ok(defect_check("character so3 {0} rank-one right module".into(), &def, cfg.tol()))
    }));
    jobs
}

fn classical_jobs(cfg: &SuiteConfig) -> Vec<Job<'_>> {
    let cases: [(&str, usize, usize); 5] =
        [("moyal-plane", 0, 2), ("so3", 0, 1), ("so3", 2, 1), ("so3-plane", 0, 1), ("symplectic4-hyperplane", 0, 1)];
    let mut jobs: Vec<Job> = Vec::new();
    for (name, i, j) in cases {
        jobs.push(Box::new(move || {
            let fx = fixture(name);
            let d = single(&fx, cfg)?;
            let (f, g) = (&fx.functions[i], &fx.functions[j]);
            let def = classical_limit_check(f, g, &d)?;
            Ok(defect_check(format!("classical limit {name} [{f}, {g}]"), &def, cfg.tol()))
        }));
    }
    jobs
}

/// (key, scheme, expected weight)
const CALIBRATION: &[(&str, Scheme, f64)] = &[
    ("1;0;2;H;v1:(B1,s),(B2,s)", Scheme::HalfPlane, 0.5),
    ("1;0;2;H;v1:(B2,s),(B1,s)", Scheme::HalfPlane, -0.5),
    ("1;0;2;H;v1:(B1,s),(B2,w)", Scheme::HalfPlane, 0.0),
    ("1;0;2;H;v1:(B1,w),(B2,s)", Scheme::HalfPlane, 0.0),
    ("1;1;1;H;v1:(B1,s)", Scheme::HalfPlane, 1.0),
    ("1;0;2;Q;v1:(B1,pp),(B2,pm)", Scheme::QuadrantW0, 1.0),
    ("1;0;2;Q;v1:(B2,pp),(B2,pm)", Scheme::QuadrantW0, 0.5),
];

fn calibration_jobs(cfg: &SuiteConfig) -> Vec<Job<'_>> {
    CALIBRATION
        .iter()
        .map(|&(key, scheme, want)| -> Job {
            Box::new(move || {
                let g = decode_key(key).map_err(OperatorError::from)?;
                let opts = McOptions { target_stderr: None, ..cfg.mc };
                let r = weight_mc_with(&g, scheme, &opts).map_err(OperatorError::from)?;
                Ok(Check::new(format!("weight {key} [{scheme}] = {want}"), (r.value - want).abs(), 3e-3, r.stderr)
                    .with_note(format!("{:.6} ± {:.2e} ({} samples)", r.value, r.stderr, r.samples)))
            })
        })
        .collect()
}

/// Runs one named suite over the fixture library.
///
/// Fails with [`VerifyError::VacuousExpectedFail`] if a negative control passes.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, VerifyError> {
    let jobs = match name {
        "jacobi" => jacobi_jobs(),
        "coisotropy" => coisotropy_jobs(),
        "assumption" => assumption_jobs(cfg),
        "star-associativity" => associativity_jobs(cfg),
        "bimodule" => bimodule_jobs(cfg),
        "classical-limit" => classical_jobs(cfg),
        "weights-calibration" => calibration_jobs(cfg),
        _ => return Err(VerifyError::UnknownSuite(name.to_string())),
    };
    let checks = run_jobs(jobs)?;
    if let Some(c) = checks.iter().find(|c| c.expect == Expect::Fail && c.status == Status::Pass) {
        return Err(VerifyError::VacuousExpectedFail(c.label.clone()));
    }
    let stats = cfg.weights.stats();
    Ok(Report {
        suite: name.to_string(),
        order: cfg.order,
        checks,
        provenance: Provenance {
            seed: cfg.mc.seed,
            samples: cfg.mc.samples,
            exact_weights: cfg.exact(),
            cache_snapshot: cfg.weights.cache().snapshot_id(),
            integrated: stats.integrated,
            cache_hits: stats.cache_hits,
            samples_used: stats.samples,
        },
    })
}
