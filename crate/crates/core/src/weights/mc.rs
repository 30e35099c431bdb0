use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::integrand::Integrand;
use super::layout::{Gauge, Slot};
use super::{Scheme, WeightError};
use crate::graphs::{AdmGraph, BoundaryLoc, Geometry};

/// Samples per batch; every batch owns an independent RNG stream.
pub const BATCH: u64 = 8192;

/// A Monte Carlo weight estimate, also the cache record format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightResult {
    pub key: String,
    pub scheme: Scheme,
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Serial,
    /// Batches run on the rayon pool; identical to `Serial` without the `parallel` feature.
    #[default]
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McOptions {
    /// Sample budget.
    pub samples: u64,
    pub seed: u64,
    /// Stop early once the standard error drops below this.
    pub target_stderr: Option<f64>,
    pub gauge: Gauge,
    pub exec: Exec,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions {
            samples: 6_000_000,
            seed: 0x5eed,
            target_stderr: None,
            gauge: Gauge::default(),
            exec: Exec::default(),
        }
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

#[derive(Clone, Copy, Debug)]
struct Anchor {
    z: Complex64,
    lo: f64,
    len: f64,
}

fn anchor(z: Complex64, loc: Option<BoundaryLoc>, geometry: Geometry) -> Anchor {
    let (lo, len) = match (loc, geometry) {
        (Some(BoundaryLoc::Real), _) => (0.0, PI),
        (Some(BoundaryLoc::Imag), _) => (-FRAC_PI_2, PI),
        (Some(BoundaryLoc::Corner), _) => (0.0, FRAC_PI_2),
        (None, _) => (0.0, TAU),
    };
    Anchor { z, lo, len }
}

/// Sequential mixture proposal: each free point is drawn in polar
/// coordinates around a uniformly chosen earlier point, with radial density
/// s/(s+r)². The proposal density at z is the mixture over all anchors,
/// so integrable 1/r collision singularities are cancelled.
struct Sampler {
    it: Integrand,
    fixed: Vec<Anchor>,
    circle: Option<(usize, f64, f64, f64)>,
    free: Vec<(usize, usize)>,
    scale: f64,
}

impl Sampler {
    fn new(it: Integrand, scale: f64) -> Self {
        let layout = &it.layout;
        let mut fixed: Vec<Anchor> =
            layout.boundary.iter().map(|&(z, loc)| anchor(z, Some(loc), layout.geometry)).collect();
        let mut circle = None;
        let mut free = Vec::new();
        for (v, slot) in layout.aerial.iter().enumerate() {
            match *slot {
                Slot::Fixed(z) => fixed.push(anchor(z, None, layout.geometry)),
                Slot::Circle { col, radius, lo, hi } => circle = Some((col, radius, lo, hi)),
                Slot::Free { col } => free.push((v, col)),
            }
        }
        Sampler { it, fixed, circle, free, scale }
    }

    fn in_domain(&self, z: Complex64) -> bool {
        z.im > 0.0 && (self.it.layout.geometry == Geometry::HalfPlane || z.re > 0.0)
    }

    /// One importance-weighted sample of the integrand.
    fn sample(&self, rng: &mut ChaCha8Rng, q: &mut [f64], anchors: &mut Vec<Anchor>) -> f64 {
        anchors.clear();
        anchors.extend_from_slice(&self.fixed);
        let mut inv_density = 1.0;
        if let Some((col, radius, lo, hi)) = self.circle {
            let a = lo + (hi - lo) * rng.random::<f64>();
            q[col] = a;
            inv_density *= hi - lo;
            anchors.push(anchor(Complex64::from_polar(radius, a), None, self.it.layout.geometry));
        }
        let s = self.scale;
        let mut inside = true;
        for &(_, col) in &self.free {
            let a = anchors[rng.random_range(0..anchors.len())];
            let u: f64 = rng.random();
            let r = s * u / (1.0 - u);
            let theta = a.lo + a.len * rng.random::<f64>();
            let z = a.z + Complex64::from_polar(r, theta);
            q[col] = z.re;
            q[col + 1] = z.im;
            if !(r > 0.0 && r.is_finite()) || !self.in_domain(z) {
                inside = false;
                break;
            }
            let mut dens = 0.0;
            for b in anchors.iter() {
                let d = (z - b.z).norm();
                if d == 0.0 {
                    return 0.0;
                }
                dens += s / ((s + d) * (s + d) * d * b.len);
            }
            inv_density *= anchors.len() as f64 / dens;
            anchors.push(anchor(z, None, self.it.layout.geometry));
        }
        if !inside {
            return 0.0;
        }
        let v = self.it.eval(q) * inv_density;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    }

    fn batch(&self, base_seed: u64, index: u64, n: u64) -> (f64, f64, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
        rng.set_stream(index);
        let mut q = vec![0.0; self.it.layout.moduli];
        let mut anchors = Vec::with_capacity(self.fixed.len() + self.free.len() + 1);
        let (mut sum, mut sumsq) = (0.0, 0.0);
        for _ in 0..n {
            let v = self.sample(&mut rng, &mut q, &mut anchors);
            sum += v;
            sumsq += v * v;
        }
        (sum, sumsq, n)
    }
}

fn run_batches(
    sampler: &Sampler,
    base: u64,
    range: std::ops::Range<u64>,
    total: u64,
    exec: Exec,
) -> Vec<(f64, f64, u64)> {
    let size = |i: u64| BATCH.min(total - i * BATCH);
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => range.into_par_iter().map(|i| sampler.batch(base, i, size(i))).collect(),
        _ => range.map(|i| sampler.batch(base, i, size(i))).collect(),
    }
}

/// Monte Carlo estimate of (2π)^{−E} ∫ det(∂θ/∂q) over the gauge-fixed domain.
pub fn weight_mc(g: &AdmGraph, scheme: Scheme, samples: u64, seed: u64) -> Result<WeightResult, WeightError> {
    weight_mc_with(g, scheme, &McOptions { samples, seed, ..McOptions::default() })
}

pub fn weight_mc_with(g: &AdmGraph, scheme: Scheme, opts: &McOptions) -> Result<WeightResult, WeightError> {
    let key = g.key();
    let mut result = WeightResult { key: key.clone(), scheme, value: 0.0, stderr: 0.0, samples: 0, seed: opts.seed };
    let it = match Integrand::new(g, scheme, opts.gauge) {
        Ok(it) => it,
        Err(WeightError::DimensionMismatch { moduli, edges }) => {
            log::debug!("{key}: {moduli} moduli vs {edges} edges, weight 0 by degree");
            return Ok(result);
        }
        Err(e) => return Err(e),
    };
    let e = g.edge_count();
    if e == 0 {
        result.value = 1.0;
        return Ok(result);
    }
    let norm = it.layout.orientation / TAU.powi(e as i32);
    let sampler = Sampler::new(it, opts.gauge.scale);
    let base = opts.seed ^ fnv1a(&format!("{key}|{scheme}"));
    let total_batches = opts.samples.div_ceil(BATCH).max(1);
    let total = opts.samples.max(1);
    // Adaptive runs stop at chunk boundaries; batch streams make any prefix reproducible.
    let chunk = if opts.target_stderr.is_some() { 16 } else { total_batches };
    let (mut sum, mut sumsq, mut n) = (0.0, 0.0, 0u64);
    let mut next = 0;
    while next < total_batches {
        let end = (next + chunk).min(total_batches);
        for (s, s2, m) in run_batches(&sampler, base, next..end, total, opts.exec) {
            sum += s;
            sumsq += s2;
            n += m;
        }
        next = end;
        let mean = sum / n as f64;
        let var = ((sumsq / n as f64 - mean * mean) * n as f64 / (n as f64 - 1.0).max(1.0)).max(0.0);
        result.value = norm * mean;
        result.stderr = norm.abs() * (var / n as f64).sqrt();
        result.samples = n;
        if opts.target_stderr.is_some_and(|t| result.stderr <= t) && n >= 4 * BATCH {
            break;
        }
    }
    Ok(result)
}
