//! Monte Carlo for the limiting distribution: full-torus phases (LI model)
//! or uniform times `y` (no independence assumption).

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chebyshev::{chebyshev_bound, ChebyshevBound};
use super::fourier::FourierDelta;
use super::spectrum::{CosTurns, Spectrum};
use crate::zeros::ZeroSet;

/// Samples per shard. Fixed so results do not depend on the worker count.
pub const SHARD_SIZE: u64 = 1 << 14;
pub const HISTOGRAM_BINS: usize = 512;
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64(seed), stream = shard index";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaMethod {
    Montecarlo,
    FourierInversion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `HISTOGRAM_BINS + 1` uniform edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    /// Bins spanning `center ± 6·sqrt(variance)` (±1 for a point mass).
    pub fn new(center: f64, variance: f64) -> Self {
        let half = if variance > 0.0 { 6.0 * variance.sqrt() } else { 1.0 };
        let lo = center - half;
        let width = 2.0 * half / HISTOGRAM_BINS as f64;
        Histogram {
            edges: (0..=HISTOGRAM_BINS).map(|k| lo + k as f64 * width).collect(),
            counts: vec![0; HISTOGRAM_BINS],
            underflow: 0,
            overflow: 0,
        }
    }

    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    #[inline]
    fn add(&mut self, x: f64) {
        let lo = self.edges[0];
        let pos = (x - lo) / self.bin_width();
        if pos < 0.0 {
            self.underflow += 1;
        } else if pos >= HISTOGRAM_BINS as f64 {
            self.overflow += 1;
        } else {
            self.counts[pos as usize] += 1;
        }
    }

    fn merge(&mut self, other: &Histogram) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.underflow += other.underflow;
        self.overflow += other.overflow;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSummary {
    /// `li_full_torus` or `time_average`.
    pub model: String,
    pub assumption: String,
    pub rng: String,
    pub seed: u64,
    pub truncation_t: f64,
    pub n_ordinates: usize,
    pub beta0: f64,
    /// The mean fed to the model.
    pub target_mean: f64,
    pub closed_form_variance: f64,
    pub n_samples: u64,
    pub mean: f64,
    pub mean_stderr: f64,
    pub variance: f64,
    pub skewness: f64,
    pub histogram: Histogram,
    pub delta_estimate: f64,
    pub delta_stderr: f64,
    pub delta_method: DeltaMethod,
    pub chebyshev_bound: Option<ChebyshevBound>,
    /// Present when the Fourier-inversion estimate was computed.
    pub fourier: Option<FourierDelta>,
    pub zero_file_digest: Option<String>,
}

/// Per-shard running sums of `d = x − target_mean`.
#[derive(Debug, Clone)]
struct Moments {
    n: u64,
    nonneg: u64,
    s1: f64,
    s2: f64,
    s3: f64,
    hist: Histogram,
}

impl Moments {
    fn new(center: f64, variance: f64) -> Self {
        Moments {
            n: 0,
            nonneg: 0,
            s1: 0.0,
            s2: 0.0,
            s3: 0.0,
            hist: Histogram::new(center, variance),
        }
    }

    #[inline]
    fn push(&mut self, x: f64, center: f64) {
        let d = x - center;
        self.n += 1;
        self.nonneg += (x >= 0.0) as u64;
        self.s1 += d;
        self.s2 += d * d;
        self.s3 += d * d * d;
        self.hist.add(x);
    }

    fn merge(&mut self, o: &Moments) {
        self.n += o.n;
        self.nonneg += o.nonneg;
        self.s1 += o.s1;
        self.s2 += o.s2;
        self.s3 += o.s3;
        self.hist.merge(&o.hist);
    }
}

fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// Run `draw` for `n` samples split into fixed shards; per-shard results
/// come back in shard order.
fn run_shards<A, I, D>(n: u64, seed: u64, init: I, draw: D) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    D: Fn(&mut ChaCha8Rng, &mut A) + Sync,
{
    let shards = n.div_ceil(SHARD_SIZE);
    (0..shards)
        .into_par_iter()
        .map(|k| {
            let mut rng = shard_rng(seed, k);
            let mut acc = init();
            let count = SHARD_SIZE.min(n - k * SHARD_SIZE);
            for _ in 0..count {
                draw(&mut rng, &mut acc);
            }
            acc
        })
        .collect()
}

/// One draw of the LI model.
#[inline]
fn draw_li(spec: &Spectrum, rng: &mut ChaCha8Rng) -> f64 {
    let cos = CosTurns::new();
    // Two phases per 64-bit output, two accumulators to keep the adds apart.
    let (mut even, mut odd) = (0.0, 0.0);
    let mut pairs = spec.terms.chunks_exact(2);
    for pair in &mut pairs {
        let bits = rng.next_u64();
        even += pair[0].amplitude * cos.eval((bits as u32).wrapping_add(pair[0].phase_turns));
        odd += pair[1].amplitude * cos.eval(((bits >> 32) as u32).wrapping_add(pair[1].phase_turns));
    }
    let mut acc = even + odd;
    if let [last] = pairs.remainder() {
        acc += last.amplitude * cos.eval(rng.next_u32().wrapping_add(last.phase_turns));
    }
    spec.mean - acc
}

/// A uniform double in `[0, 1)`.
#[inline]
fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn summarize(
    spec: &Spectrum,
    model: &str,
    assumption: &str,
    seed: u64,
    shards: Vec<Moments>,
) -> DistributionSummary {
    let closed = spec.variance();
    let mut total = Moments::new(spec.mean, closed);
    for s in &shards {
        total.merge(s);
    }
    let n = total.n.max(1) as f64;
    let m1 = total.s1 / n;
    let var = (total.s2 / n - m1 * m1).max(0.0);
    let third = total.s3 / n - 3.0 * m1 * total.s2 / n + 2.0 * m1 * m1 * m1;
    let skewness = if var > 0.0 { third / var.powf(1.5) } else { 0.0 };
    let sample_var = if total.n > 1 { var * n / (n - 1.0) } else { 0.0 };
    let delta = total.nonneg as f64 / n;
    DistributionSummary {
        model: model.into(),
        assumption: assumption.into(),
        rng: RNG_NAME.into(),
        seed,
        truncation_t: spec.truncation_t,
        n_ordinates: spec.len(),
        beta0: spec.beta0,
        target_mean: spec.mean,
        closed_form_variance: closed,
        n_samples: total.n,
        mean: spec.mean + m1,
        mean_stderr: (sample_var / n).sqrt(),
        variance: sample_var,
        skewness,
        histogram: total.hist,
        delta_estimate: delta,
        delta_stderr: (delta * (1.0 - delta) / n).sqrt(),
        delta_method: DeltaMethod::Montecarlo,
        chebyshev_bound: chebyshev_bound(spec.mean, closed),
        fourier: None,
        zero_file_digest: None,
    }
}

/// Sample `X = mean − Σ_{γ≤T} 2 Re(M(γ) e^{2πiθ_γ}/(β₀+iγ))` with independent
/// uniform `θ_γ` (phases quantized to 2^-32 turns).
pub fn sample_li(zs: &ZeroSet, mean: f64, t: f64, n: u64, seed: u64) -> DistributionSummary {
    let spec = Spectrum::new(zs, mean, t);
    sample_li_spectrum(&spec, n, seed)
}

pub fn sample_li_spectrum(spec: &Spectrum, n: u64, seed: u64) -> DistributionSummary {
    let closed = spec.variance();
    let shards = run_shards(
        n,
        seed,
        || Moments::new(spec.mean, closed),
        |rng, acc: &mut Moments| acc.push(draw_li(spec, rng), spec.mean),
    );
    summarize(
        spec,
        "li_full_torus",
        "LI: ordinates up to T treated as linearly independent over Q",
        seed,
        shards,
    )
}

/// Sample `G_T(e^y)` at uniform `y ∈ [2, y_max]`.
pub fn sample_time_average(
    zs: &ZeroSet,
    mean: f64,
    t: f64,
    y_max: f64,
    n: u64,
    seed: u64,
) -> crate::Result<DistributionSummary> {
    if !(y_max > 2.0) {
        return Err(crate::Error::Domain(format!("y_max = {y_max} must exceed 2")));
    }
    let spec = Spectrum::new(zs, mean, t);
    let closed = spec.variance();
    let shards = run_shards(
        n,
        seed,
        || Moments::new(spec.mean, closed),
        |rng, acc: &mut Moments| {
            let y = 2.0 + (y_max - 2.0) * uniform(rng);
            acc.push(spec.g_at_log(y), spec.mean);
        },
    );
    Ok(summarize(&spec, "time_average", "none", seed, shards))
}

/// `(1/n) Σ e^{−iξX}` over LI-model samples, for each `ξ` in `xi`.
pub fn empirical_cf(spec: &Spectrum, xi: &[f64], n: u64, seed: u64) -> Vec<Complex64> {
    let parts = run_shards(
        n,
        seed,
        || vec![Complex64::new(0.0, 0.0); xi.len()],
        |rng, acc: &mut Vec<Complex64>| {
            let x = draw_li(spec, rng);
            for (a, &k) in acc.iter_mut().zip(xi) {
                *a += Complex64::cis(-k * x);
            }
        },
    );
    let mut out = vec![Complex64::new(0.0, 0.0); xi.len()];
    for p in parts {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    out.iter().map(|v| v / n as f64).collect()
}

/// The raw LI-model draws in shard order.
pub fn li_draws(spec: &Spectrum, n: u64, seed: u64) -> Vec<f64> {
    run_shards(n, seed, Vec::new, |rng, acc: &mut Vec<f64>| acc.push(draw_li(spec, rng)))
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::Component;

    fn zeta_like(gammas: &[f64]) -> ZeroSet {
        ZeroSet::from_ordinates(0.5, Component::new("zeta", 1.0, 0, -1), gammas).unwrap()
    }

    #[test]
    fn empty_set_is_a_point_mass() {
        let s = sample_li(&zeta_like(&[]), -1.0, 100.0, 1000, 1);
        assert_eq!(s.mean, -1.0);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.delta_estimate, 0.0);
        assert_eq!(s.histogram.total(), 1000);
        let s = sample_li(&zeta_like(&[]), 0.0, 100.0, 10, 1);
        assert_eq!(s.delta_estimate, 1.0);
        let s = sample_time_average(&zeta_like(&[]), 2.0, 100.0, 50.0, 10, 1).unwrap();
        assert_eq!(s.mean, 2.0);
    }

    #[test]
    fn deterministic() {
        let zs = zeta_like(&[14.13, 21.02, 25.01]);
        let a = sample_li(&zs, -1.0, 30.0, 50_000, 7);
        let b = sample_li(&zs, -1.0, 30.0, 50_000, 7);
        assert_eq!(a, b);
        let c = sample_li(&zs, -1.0, 30.0, 50_000, 8);
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn histogram_accounts_for_every_sample() {
        let zs = zeta_like(&[1.0, 2.0]);
        let s = sample_li(&zs, 0.0, 10.0, 40_000, 3);
        assert_eq!(s.histogram.total(), s.n_samples);
        assert_eq!(s.histogram.edges.len(), HISTOGRAM_BINS + 1);
    }

    #[test]
    fn single_zero_time_average_mean() {
        let zs = zeta_like(&[3.0]);
        let s = sample_time_average(&zs, -1.0, 10.0, 1e4, 200_000, 5).unwrap();
        assert!((s.mean + 1.0).abs() < 0.01, "{}", s.mean);
    }
}
