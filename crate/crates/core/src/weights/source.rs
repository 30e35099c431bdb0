use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{weight_mc_with, McOptions, Scheme, WeightCache, WeightError, WeightResult};
use crate::graphs::{orbit_rep, AdmGraph, EdgeKind, Target};
use crate::polyalg::{q, qf, Approx, Coeff, Rational};

/// Where weights come from.
#[derive(Clone, Debug)]
pub enum WeightMode {
    /// Closed-form values only: the empty graph, products of first-order
    /// wedges, and the single-edge vector-field graph; anything else is missing.
    Exact,
    /// Closed forms and cached results only; anything else is reported missing.
    CacheOnly,
    /// Closed forms, then the cache, then integrate orbit representatives on demand.
    MonteCarlo(McOptions),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SourceStats {
    pub integrated: usize,
    pub cache_hits: usize,
    pub samples: u64,
    /// Keys whose standard error ended above the explicit target, or above
    /// [`ACCEPTABLE_STDERR`] when none was set.
    pub nonconverged: Vec<String>,
}

/// Resolves graph weights as value ± standard error, memoized.
#[derive(Debug)]
pub struct WeightSource {
    mode: WeightMode,
    cache: Arc<WeightCache>,
    memo: Mutex<HashMap<(String, Scheme), Approx>>,
    stats: Mutex<SourceStats>,
    closed_forms: bool,
}

/// Closed-form weight, if known.
pub fn exact_weight(g: &AdmGraph, scheme: Scheme) -> Option<Rational> {
    if g.edge_count() == 0 {
        return Some(q(1));
    }
    if orbit_rep(g).sign == 0 {
        return Some(q(0));
    }
    if scheme != Scheme::HalfPlane {
        return None;
    }
    let straight = g.edges.iter().all(|e| e.kind == EdgeKind::Straight);
    if !straight {
        return None;
    }
    // Vector-field vertex alone over one boundary point: ∫ dφ/2π over the semicircle.
    if g.k == 1 && g.n_xi == 1 && g.n_b == 1 {
        return Some(q(1));
    }
    if g.n_xi == 0 && g.n_b == 2 {
        let mut w = q(1);
        for v in 1..=g.k {
            let r = g.edges_of(v);
            match (g.edges[r.start].target, g.edges[r.start + 1].target) {
                (Target::Boundary(1), Target::Boundary(2)) => w *= qf(1, 2),
                (Target::Boundary(2), Target::Boundary(1)) => w *= qf(-1, 2),
                _ => return None,
            }
        }
        return Some(w);
    }
    None
}

/// Per-graph stderr target when none is configured: small enough that
/// propagated errors of sums over a few dozen graphs stay well under 10⁻².
pub const DEFAULT_TARGET: f64 = 3e-4;

/// Without an explicit target, a weight counts as nonconverged only above this.
pub const ACCEPTABLE_STDERR: f64 = 1e-3;

impl WeightSource {
    pub fn new(mode: WeightMode, cache: Arc<WeightCache>) -> Self {
        WeightSource {
            mode,
            cache,
            memo: Mutex::new(HashMap::new()),
            stats: Mutex::new(SourceStats::default()),
            closed_forms: true,
        }
    }

    pub fn exact() -> Self {
        Self::new(WeightMode::Exact, Arc::new(WeightCache::in_memory()))
    }

    pub fn monte_carlo(opts: McOptions, cache: Arc<WeightCache>) -> Self {
        Self::new(WeightMode::MonteCarlo(opts), cache)
    }

    /// With `false`, Monte Carlo mode integrates every graph except the empty
    /// graph and sign-zero orbits, even where a closed form is known.
    pub fn with_closed_forms(mut self, on: bool) -> Self {
        self.closed_forms = on;
        self
    }

    pub fn mode(&self) -> &WeightMode {
        &self.mode
    }

    pub fn cache(&self) -> &Arc<WeightCache> {
        &self.cache
    }

    pub fn stats(&self) -> SourceStats {
        self.stats.lock().unwrap().clone()
    }

    fn memo_get(&self, key: &str, scheme: Scheme) -> Option<Approx> {
        self.memo.lock().unwrap().get(&(key.to_string(), scheme)).copied()
    }

    fn memo_put(&self, key: String, scheme: Scheme, v: Approx) {
        self.memo.lock().unwrap().insert((key, scheme), v);
    }

    fn cached(&self, key: &str, scheme: Scheme) -> Option<Approx> {
        let r = self.cache.get(key, scheme)?;
        self.stats.lock().unwrap().cache_hits += 1;
        let v = Approx::new(r.value, r.stderr);
        self.memo_put(key.to_string(), scheme, v);
        Some(v)
    }

    /// Weights of `graphs` in `scheme`, in order.
    pub fn resolve(&self, graphs: &[&AdmGraph], scheme: Scheme) -> Result<Vec<Approx>, WeightError> {
        let mut out: Vec<Option<Approx>> = vec![None; graphs.len()];
        let mut missing = Vec::new();
        // (index, rep, sign) still to integrate
        let mut pending: Vec<(usize, AdmGraph, i8)> = Vec::new();
        for (i, g) in graphs.iter().enumerate() {
            let key = g.key();
            if let Some(v) = self.memo_get(&key, scheme) {
                out[i] = Some(v);
                continue;
            }
            match &self.mode {
                WeightMode::Exact => match exact_weight(g, scheme) {
                    Some(w) => {
                        let v = Approx::from_rational(&w);
                        self.memo_put(key, scheme, v);
                        out[i] = Some(v);
                    }
                    None => missing.push(key),
                },
                WeightMode::CacheOnly | WeightMode::MonteCarlo(_) => {
                    let trivial = g.edge_count() == 0 || orbit_rep(g).sign == 0;
                    if let Some(w) = exact_weight(g, scheme).filter(|_| self.closed_forms || trivial) {
                        let v = Approx::from_rational(&w);
                        self.memo_put(key, scheme, v);
                        out[i] = Some(v);
                        continue;
                    }
                    if let Some(v) = self.cached(&key, scheme) {
                        out[i] = Some(v);
                        continue;
                    }
                    let orb = orbit_rep(g);
                    let rep_key = orb.rep.key();
                    if let Some(v) = self.memo_get(&rep_key, scheme).or_else(|| self.cached(&rep_key, scheme)) {
                        let v = if orb.sign < 0 { v.neg() } else { v };
                        self.memo_put(key, scheme, v);
                        out[i] = Some(v);
                        continue;
                    }
                    if matches!(self.mode, WeightMode::CacheOnly) {
                        missing.push(key);
                    } else {
                        pending.push((i, orb.rep, orb.sign));
                    }
                }
            }
        }
        if !missing.is_empty() {
            missing.sort();
            missing.dedup();
            return Err(WeightError::Missing(missing));
        }
        if let WeightMode::MonteCarlo(opts) = &self.mode {
            for (i, rep, sign) in pending {
                let rep_key = rep.key();
                let v = match self.memo_get(&rep_key, scheme) {
                    Some(v) => v,
                    None => {
                        let r = self.integrate(&rep, scheme, opts)?;
                        let v = Approx::new(r.value, r.stderr);
                        self.memo_put(rep_key.clone(), scheme, v);
                        v
                    }
                };
                let v = if sign < 0 { v.neg() } else { v };
                let key = graphs[i].key();
                if key != rep_key {
                    let rec = self.cache.get(&rep_key, scheme).expect("representative was just stored");
                    self.cache.put(WeightResult { key: key.clone(), value: v.val, ..rec })?;
                }
                self.memo_put(key, scheme, v);
                out[i] = Some(v);
            }
        }
        Ok(out.into_iter().map(|v| v.expect("every graph resolved")).collect())
    }

    fn integrate(&self, g: &AdmGraph, scheme: Scheme, opts: &McOptions) -> Result<WeightResult, WeightError> {
        let target = opts.target_stderr.unwrap_or(DEFAULT_TARGET);
        let run = McOptions { target_stderr: Some(target), ..*opts };
        let r = weight_mc_with(g, scheme, &run)?;
        log::info!("integrated {} [{}] = {:.6} ± {:.2e} ({} samples)", r.key, scheme, r.value, r.stderr, r.samples);
        {
            let mut st = self.stats.lock().unwrap();
            st.integrated += 1;
            st.samples += r.samples;
            if r.stderr > opts.target_stderr.unwrap_or(ACCEPTABLE_STDERR) {
                st.nonconverged.push(format!("{} [{scheme}]", r.key));
            }
        }
        self.cache.put(r.clone())?;
        Ok(r)
    }
}
