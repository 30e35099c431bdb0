use std::sync::Arc;

use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};

use branequant::graphs::{count, enumerate_iter, survives, BraneConfig, Geometry, KindSet, Scheme, DEFAULT_CAP};
use branequant::operators::{DeformedProduct, LiftOutcome, OperatorError};
use branequant::poisson::{check_coisotropic, jacobiator, Brane};
use branequant::polyalg::SeriesJson;
use branequant::verify::{run_suite, Check, Provenance, Report, SuiteConfig, VerifyError};
use branequant::weights::{McOptions, SourceStats, WeightCache, WeightError, WeightSource};

use crate::io::{emit, input_err, load_brane, load_poisson, load_poly, InputError};
use crate::{code, Cli, Command, Family, ModuleSide, RunArgs};

/// Highest π-vertex count the `weights` command will integrate.
const MAX_INTEGRATE_K: usize = 2;

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<InputError>().is_some() {
        return code::INPUT;
    }
    let op = e.downcast_ref::<OperatorError>().or_else(|| match e.downcast_ref::<VerifyError>() {
        Some(VerifyError::Operator(op)) => Some(op),
        _ => None,
    });
    match (op, e.downcast_ref::<VerifyError>(), e.downcast_ref::<WeightError>()) {
        (Some(OperatorError::Weight(WeightError::Missing(_))), _, _) | (_, _, Some(WeightError::Missing(_))) => {
            code::NONCONVERGED
        }
        (_, Some(VerifyError::VacuousExpectedFail(_)), _) => code::CHECK_FAILED,
        _ => code::INPUT,
    }
}

fn validate(run: &RunArgs) -> Result<()> {
    if run.order > 2 && !run.unsafe_order {
        return Err(input_err(format!("order {} exceeds 2; pass --unsafe-order to allow it", run.order)));
    }
    if run.samples < 1000 {
        return Err(input_err(format!("--samples must be at least 1000 (got {})", run.samples)));
    }
    if let Some(t) = run.target_stderr {
        if !(t > 0.0 && t.is_finite()) {
            return Err(input_err(format!("--target-stderr must be positive (got {t})")));
        }
    }
    Ok(())
}

fn mc_options(run: &RunArgs) -> McOptions {
    McOptions { samples: run.samples, seed: run.seed, target_stderr: run.target_stderr, ..McOptions::default() }
}

fn weight_source(run: &RunArgs) -> Result<WeightSource> {
    if run.exact_weights {
        return Ok(WeightSource::exact());
    }
    let cache = match &run.cache {
        Some(p) => WeightCache::open(p).map_err(|e| input_err(format!("cache {}: {e}", p.display())))?,
        None => WeightCache::in_memory(),
    };
    Ok(WeightSource::monte_carlo(mc_options(run), Arc::new(cache)))
}

fn config(cli: &Cli) -> Value {
    json!({ "run": cli.run, "invocation": cli.command })
}

fn stats_json(src: &WeightSource) -> Value {
    let SourceStats { integrated, cache_hits, samples, nonconverged } = src.stats();
    json!({
        "integrated": integrated,
        "cache_hits": cache_hits,
        "samples": samples,
        "nonconverged": nonconverged,
        "cache_snapshot": src.cache().snapshot_id(),
    })
}

fn finish(cli: &Cli, src: &WeightSource, mut out: Value, ok: bool) -> Result<u8> {
    out["config"] = config(cli);
    out["weights"] = stats_json(src);
    emit(&out, cli.run.out.as_deref())?;
    let nonconverged = src.stats().nonconverged;
    if !nonconverged.is_empty() {
        eprintln!("warning: {} weight(s) above the stderr target: {}", nonconverged.len(), nonconverged.join(", "));
        return Ok(code::NONCONVERGED);
    }
    Ok(if ok { code::PASS } else { code::CHECK_FAILED })
}

pub fn run(cli: &Cli) -> Result<u8> {
    validate(&cli.run)?;
    match &cli.command {
        Command::Check { poisson, brane } => cmd_check(cli, poisson, brane),
        Command::Weights { k, scheme, family } => cmd_weights(cli, *k, *scheme, *family),
        Command::Star { poisson, brane, f, g } => {
            let pi = load_poisson(poisson)?;
            let n = pi.dim();
            let c = match brane {
                Some(b) => load_brane(b, n)?,
                None => Brane::full(n),
            };
            let (f, g) = (load_poly(f, n)?, load_poly(g, n)?);
            let src = Arc::new(weight_source(&cli.run)?);
            let d = DeformedProduct::single(pi, c, cli.run.order, src.clone())?;
            let s = d.star(&f, &g)?;
            finish(cli, &src, json!({ "result": SeriesJson::from_series(&s) }), true)
        }
        Command::Module { poisson, c0, c1, side, psi, f } => {
            let pi = load_poisson(poisson)?;
            let n = pi.dim();
            let (c0, c1) = (load_brane(c0, n)?, load_brane(c1, n)?);
            let (psi, f) = (load_poly(psi, n)?, load_poly(f, n)?);
            let src = Arc::new(weight_source(&cli.run)?);
            let d = DeformedProduct::two(pi, c0, c1, cli.run.order, src.clone())?;
            let s = match side {
                ModuleSide::Right => d.mod_right(&psi, &f)?,
                ModuleSide::Left => d.mod_left(&f, &psi)?,
            };
            finish(cli, &src, json!({ "result": SeriesJson::from_series(&s) }), true)
        }
        Command::Lift { poisson, brane, f, degree_cap } => {
            let pi = load_poisson(poisson)?;
            let n = pi.dim();
            let c = load_brane(brane, n)?;
            let f = load_poly(f, n)?;
            let src = Arc::new(weight_source(&cli.run)?);
            let d = DeformedProduct::single(pi, c, cli.run.order, src.clone())?;
            match d.lift(&f, *degree_cap)? {
                LiftOutcome::Lifted(s) => {
                    finish(cli, &src, json!({ "status": "lifted", "result": SeriesJson::from_series(&s) }), true)
                }
                LiftOutcome::Obstructed { order, residual } => {
                    finish(cli, &src, json!({ "status": "obstructed", "order": order, "residual": residual }), false)
                }
            }
        }
        Command::Verify { suite } => cmd_verify(cli, suite),
    }
}

#[derive(Serialize)]
struct Output<'a, T: Serialize> {
    config: Value,
    #[serde(flatten)]
    body: &'a T,
}

fn cmd_check(cli: &Cli, poisson: &std::path::Path, branes: &[std::path::PathBuf]) -> Result<u8> {
    let pi = load_poisson(poisson)?;
    let jac = jacobiator(&pi).components().map(|(_, p)| p.max_abs()).fold(0.0, f64::max);
    let mut checks = vec![Check::new("jacobi", jac, 0.0, 0.0)];
    for b in branes {
        let c = load_brane(b, pi.dim())?;
        checks.push(Check::boolean(format!("coisotropy {}", b.display()), check_coisotropic(&pi, &c)));
    }
    let report = Report { suite: "check".into(), order: 0, checks, provenance: Provenance::default() };
    emit(&Output { config: config(cli), body: &report }, cli.run.out.as_deref())?;
    Ok(if report.ok() { code::PASS } else { code::CHECK_FAILED })
}

/// A brane configuration under which every edge kind has a nonempty index range.
fn generic_config(scheme: Scheme) -> BraneConfig {
    match scheme {
        Scheme::HalfPlane => BraneConfig::Single(Brane::new(2, [1]).expect("valid")),
        _ => BraneConfig::Two(Brane::new(4, [1, 2]).expect("valid"), Brane::new(4, [1, 3]).expect("valid")),
    }
}

fn cmd_weights(cli: &Cli, k: usize, scheme: Scheme, family: Family) -> Result<u8> {
    let (n_xi, n_b) = match family {
        Family::Star => (0, 2),
        Family::A => (1, 1),
        Family::F => (2, 0),
    };
    let allowed = match family {
        Family::Star => matches!(scheme, Scheme::HalfPlane | Scheme::QuadrantW0 | Scheme::QuadrantW1),
        Family::A => matches!(scheme, Scheme::HalfPlane | Scheme::QuadrantCorner),
        Family::F => scheme == Scheme::HalfPlane,
    };
    if !allowed {
        return Err(input_err(format!("family {family:?} has no graphs in scheme {scheme}")));
    }
    let (kinds, geometry) = match scheme {
        Scheme::HalfPlane => (KindSet::Single, Geometry::HalfPlane),
        _ => (KindSet::Two, Geometry::Quadrant),
    };
    let cfg = generic_config(scheme);
    let enumerated = count(k + n_xi, n_xi, n_b, kinds);
    let cap = DEFAULT_CAP.max(k);
    let survivors: Vec<_> = enumerate_iter(k + n_xi, n_xi, n_b, kinds, geometry, cap)
        .map_err(|e| input_err(e.to_string()))?
        .filter(|g| survives(g, &cfg, scheme))
        .collect();
    let mut out = json!({
        "family": family,
        "k": k,
        "scheme": scheme,
        "enumerated": enumerated.to_string(),
        "survivors": survivors.len(),
    });
    if k > MAX_INTEGRATE_K {
        eprintln!("refusing to integrate: k = {k} exceeds {MAX_INTEGRATE_K}; enumeration only");
        out["mode"] = json!("enumeration-only");
        out["config"] = config(cli);
        emit(&out, cli.run.out.as_deref())?;
        return Ok(code::PASS);
    }
    let src = weight_source(&cli.run)?.with_closed_forms(false);
    let refs: Vec<_> = survivors.iter().collect();
    let ws = src.resolve(&refs, scheme)?;
    out["mode"] = json!("integrated");
    out["values"] =
        survivors.iter().zip(&ws).map(|(g, w)| json!({ "key": g.key(), "value": w.val, "stderr": w.err })).collect();
    finish(cli, &src, out, true)
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<u8> {
    let src = Arc::new(weight_source(&cli.run)?);
    let cfg = SuiteConfig { order: cli.run.order, weights: src.clone(), mc: mc_options(&cli.run), tolerance: None };
    let report = match run_suite(suite, &cfg) {
        Err(VerifyError::UnknownSuite(s)) => return Err(input_err(VerifyError::UnknownSuite(s).to_string())),
        r => r?,
    };
    emit(&Output { config: config(cli), body: &report }, cli.run.out.as_deref())?;
    for c in report.unexpected() {
        eprintln!(
            "unexpected: {} ({:?}, residual {:.3e}, tolerance {:.1e})",
            c.label, c.status, c.residual, c.tolerance
        );
    }
    Ok(if report.ok() { code::PASS } else { code::CHECK_FAILED })
}
