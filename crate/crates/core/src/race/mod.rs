//! Race trajectories `S(x) = Σ_{p≤x} Σ_f a_f λ_f(p)` and their logarithmic
//! densities.

mod csv;

pub use csv::{export_trajectory, import_trajectory, read_trajectory, write_trajectory};

use rayon::prelude::*;

use crate::coeffs::CoefficientSource;
use crate::error::{domain, Result};
use crate::li::{LiCursor, LiEvaluator};
use crate::primes::sieve_primes;

#[derive(Debug, Clone)]
pub struct RaceSpec {
    pub terms: Vec<(CoefficientSource, f64)>,
    pub beta0: f64,
    /// `Σ a_f · ord_{s=1} L(f, s)`; −1 for π(x) against li(x).
    pub li_coefficient: f64,
}

impl RaceSpec {
    pub fn new(terms: Vec<(CoefficientSource, f64)>, beta0: f64) -> Result<Self> {
        if !(0.5..1.0).contains(&beta0) {
            return domain(format!("beta0 = {beta0} must lie in [1/2, 1)"));
        }
        let li_coefficient = terms
            .iter()
            .map(|(s, w)| w * s.pole_order_s1 as f64)
            .sum();
        Ok(RaceSpec {
            terms,
            beta0,
            li_coefficient,
        })
    }

    pub fn single(source: CoefficientSource, beta0: f64) -> Result<Self> {
        Self::new(vec![(source, 1.0)], beta0)
    }

    pub fn label(&self) -> String {
        self.terms
            .iter()
            .map(|(s, w)| {
                if *w == 1.0 {
                    s.label.clone()
                } else {
                    format!("{w}*{}", s.label)
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// `Σ_f a_f λ_f(p)`.
    pub fn contribution(&self, p: u64) -> f64 {
        self.terms.iter().map(|(s, w)| w * s.lambda(p)).sum()
    }
}

/// `S` as a right-continuous step function with steps at primes.
#[derive(Debug, Clone, PartialEq)]
pub struct RaceTrajectory {
    pub label: String,
    pub beta0: f64,
    pub li_coefficient: f64,
    pub xmax: f64,
    /// `(p, S(p))`; the first entry is always `(2, S(2))`.
    pub breakpoints: Vec<(u64, f64)>,
}

/// Neumaier compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sum the race over all primes `p <= xmax`.
pub fn accumulate(spec: &RaceSpec, xmax: f64) -> Result<RaceTrajectory> {
    if !(xmax >= 2.0) || !xmax.is_finite() {
        return domain(format!("xmax = {xmax} must be at least 2"));
    }
    let primes = sieve_primes(xmax.floor() as u64 + 1);
    let contributions: Vec<f64> = primes
        .par_chunks(1 << 12)
        .flat_map_iter(|chunk| chunk.iter().map(|&p| spec.contribution(p)).collect::<Vec<_>>())
        .collect();
    let mut acc = CompensatedSum::default();
    let mut breakpoints = Vec::new();
    for (&p, &c) in primes.iter().zip(&contributions) {
        acc.add(c);
        if c != 0.0 || p == 2 {
            breakpoints.push((p, acc.value()));
        }
    }
    Ok(RaceTrajectory {
        label: spec.label(),
        beta0: spec.beta0,
        li_coefficient: spec.li_coefficient,
        xmax,
        breakpoints,
    })
}

/// Summary of a trajectory over a window in `y = log x`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TrajectoryStats {
    pub y0: f64,
    pub y1: f64,
    pub sign_changes: u64,
    pub running_min: f64,
    pub running_max: f64,
    /// Extremes of the normalized `E(x)` at the breakpoints in the window.
    pub e_min: f64,
    pub e_max: f64,
    /// `(1/(y1−y0)) ∫ E(e^y) dy`.
    pub log_mean: f64,
    /// Measure of `{E(e^y) >= 0}` over the window, normalized.
    pub density_nonneg: f64,
    /// Spread of the density over 16 equal sub-windows, divided by 4.
    pub density_stderr: f64,
}

impl RaceTrajectory {
    /// `S(x)`; zero below 2.
    pub fn s_at(&self, x: f64) -> f64 {
        let k = self.breakpoints.partition_point(|&(p, _)| (p as f64) <= x);
        if k == 0 {
            0.0
        } else {
            self.breakpoints[k - 1].1
        }
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if !(x >= 2.0 && x <= self.xmax) {
            return domain(format!("x = {x} outside [2, {}]", self.xmax));
        }
        Ok(())
    }

    /// `E(x) = (log x / x^β₀)(S(x) + c·li(x))`.
    pub fn normalize(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        let li = if self.li_coefficient != 0.0 {
            LiEvaluator::default().li(x)?
        } else {
            0.0
        };
        Ok(scale(x.ln(), self.beta0) * (self.s_at(x) + self.li_coefficient * li))
    }

    fn check_window(&self, y0: f64, y1: f64) -> Result<()> {
        if !(y0 < y1) {
            return domain(format!("empty window [{y0}, {y1}]"));
        }
        if y0 < 2f64.ln() - 1e-12 || y1 > self.xmax.ln() + 1e-12 {
            return domain(format!(
                "window [{y0}, {y1}] exceeds [log 2, log {}]",
                self.xmax
            ));
        }
        Ok(())
    }

    /// Pieces `(ya, yb, S)` of the step function restricted to `[y0, y1]`.
    fn pieces(&self, y0: f64, y1: f64) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let start = self
            .breakpoints
            .partition_point(|&(p, _)| (p as f64).ln() <= y0)
            .saturating_sub(1);
        let bps = &self.breakpoints[start..];
        bps.iter().enumerate().map_while(move |(k, &(p, s))| {
            let ya = (p as f64).ln().max(y0);
            if ya >= y1 {
                return None;
            }
            let yb = bps.get(k + 1).map_or(y1, |&(q, _)| (q as f64).ln().min(y1));
            Some((ya, yb, s))
        })
    }

    /// Measure of `{y ∈ [y0, y1] : S(e^y) >= 0}` over `y1 − y0`. With
    /// `use_normalized` the sign of `E` is used, i.e. the li term is included.
    pub fn log_density_nonneg(&self, y0: f64, y1: f64, use_normalized: bool) -> Result<f64> {
        Ok(self.sign_measure(y0, y1, use_normalized)?.0 / (y1 - y0))
    }

    /// Measure of `{S(e^y) < 0}` over the window length.
    pub fn log_density_strictneg(&self, y0: f64, y1: f64, use_normalized: bool) -> Result<f64> {
        Ok(self.sign_measure(y0, y1, use_normalized)?.1 / (y1 - y0))
    }

    /// `(measure nonneg, measure negative, sign changes)`.
    fn sign_measure(&self, y0: f64, y1: f64, use_normalized: bool) -> Result<(f64, f64, u64)> {
        self.check_window(y0, y1)?;
        let coeff = if use_normalized { self.li_coefficient } else { 0.0 };
        let mut nonneg = 0.0;
        let mut neg = 0.0;
        let mut changes = 0u64;
        let mut last_sign: Option<bool> = None;
        let mut record = |sign: bool, len: f64, last: &mut Option<bool>| {
            if sign {
                nonneg += len;
            } else {
                neg += len;
            }
            if last.is_some_and(|l| l != sign) {
                changes += 1;
            }
            *last = Some(sign);
        };
        if coeff == 0.0 {
            for (ya, yb, s) in self.pieces(y0, y1) {
                record(s >= 0.0, yb - ya, &mut last_sign);
            }
        } else {
            let mut cursor = LiEvaluator::default().cursor();
            for (ya, yb, s) in self.pieces(y0, y1) {
                let (xa, xb) = (ya.exp(), yb.exp());
                let la = cursor.at(xa)?;
                let lb = cursor.at(xb)?;
                let va = s + coeff * la;
                let vb = s + coeff * lb;
                if (va >= 0.0) == (vb >= 0.0) {
                    record(va >= 0.0, yb - ya, &mut last_sign);
                } else {
                    let xc = cursor_inverse(&cursor, xa, la, xb, -s / coeff);
                    let yc = xc.ln().clamp(ya, yb);
                    record(va >= 0.0, yc - ya, &mut last_sign);
                    record(vb >= 0.0, yb - yc, &mut last_sign);
                }
            }
        }
        Ok((nonneg, neg, changes))
    }

    /// Stats over `[y0, y1]` for the normalized function `E`.
    pub fn stats(&self, y0: f64, y1: f64) -> Result<TrajectoryStats> {
        let (nonneg, _, sign_changes) = self.sign_measure(y0, y1, true)?;
        let mut running_min = f64::INFINITY;
        let mut running_max = f64::NEG_INFINITY;
        let mut e_min = f64::INFINITY;
        let mut e_max = f64::NEG_INFINITY;
        let mut integral = CompensatedSum::default();
        let mut cursor = LiEvaluator::default().cursor();
        let c = self.li_coefficient;
        for (ya, yb, s) in self.pieces(y0, y1) {
            running_min = running_min.min(s);
            running_max = running_max.max(s);
            let ea = scale(ya, self.beta0) * (s + c * li_or_zero(&mut cursor, c, ya)?);
            e_min = e_min.min(ea);
            e_max = e_max.max(ea);
            // Composite Simpson on ≈0.01-wide panels.
            let panels = ((yb - ya) / 0.01).ceil().max(1.0) as usize;
            let h = (yb - ya) / panels as f64;
            let mut fa = ea;
            for k in 0..panels {
                let ym = ya + (k as f64 + 0.5) * h;
                let yr = ya + (k + 1) as f64 * h;
                let fm = scale(ym, self.beta0) * (s + c * li_or_zero(&mut cursor, c, ym)?);
                let fr = scale(yr, self.beta0) * (s + c * li_or_zero(&mut cursor, c, yr)?);
                integral.add(h / 6.0 * (fa + 4.0 * fm + fr));
                fa = fr;
            }
        }
        let density_stderr = self.batch_stderr(y0, y1, 16)?;
        Ok(TrajectoryStats {
            y0,
            y1,
            sign_changes,
            running_min,
            running_max,
            e_min,
            e_max,
            log_mean: integral.value() / (y1 - y0),
            density_nonneg: nonneg / (y1 - y0),
            density_stderr,
        })
    }

    /// Batch-means spread of the density: std of per-block densities / √blocks.
    fn batch_stderr(&self, y0: f64, y1: f64, blocks: usize) -> Result<f64> {
        let w = (y1 - y0) / blocks as f64;
        let vals: Vec<f64> = (0..blocks)
            .map(|k| {
                let a = y0 + k as f64 * w;
                let b = if k + 1 == blocks { y1 } else { a + w };
                self.log_density_nonneg(a, b, true)
            })
            .collect::<Result<_>>()?;
        let mean = vals.iter().sum::<f64>() / blocks as f64;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (blocks - 1) as f64;
        Ok((var / blocks as f64).sqrt())
    }

    /// `E(e^y)` at increasing `ys`, all inside `[log 2, log xmax]`.
    pub fn normalized_at_sorted(&self, ys: &[f64]) -> Result<Vec<f64>> {
        let mut cursor = LiEvaluator::default().cursor();
        let c = self.li_coefficient;
        ys.iter()
            .map(|&y| {
                let x = y.exp();
                self.check_x(x.min(self.xmax))?;
                Ok(scale(y, self.beta0) * (self.s_at(x) + c * li_or_zero(&mut cursor, c, y)?))
            })
            .collect()
    }
}

fn scale(y: f64, beta0: f64) -> f64 {
    y * (-beta0 * y).exp()
}

fn li_or_zero(cursor: &mut LiCursor, c: f64, y: f64) -> Result<f64> {
    if c == 0.0 {
        Ok(0.0)
    } else {
        cursor.at(y.exp().max(2.0))
    }
}

fn cursor_inverse(cursor: &LiCursor, xa: f64, la: f64, xb: f64, target: f64) -> f64 {
    cursor.inverse_within(xa, la, xb, target)
}
