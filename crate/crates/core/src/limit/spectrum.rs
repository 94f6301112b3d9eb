//! A truncated zero set in the form the distribution code consumes:
//! `X = mean − Σ_γ r_γ cos(φ_γ + arg_γ)` with `r_γ = 2|M(γ)|/|β₀+iγ|`.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use crate::zeros::ZeroSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralTerm {
    pub gamma: f64,
    pub amplitude: f64,
    /// `arg(M(γ)/(β₀+iγ))` in radians.
    pub phase: f64,
    /// The same phase in units of 2^-32 turns.
    pub phase_turns: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub beta0: f64,
    pub mean: f64,
    pub truncation_t: f64,
    pub terms: Vec<SpectralTerm>,
}

impl Spectrum {
    /// Distinct ordinates `γ <= t`; ordinates whose `M(γ)` cancels are dropped.
    pub fn new(zs: &ZeroSet, mean: f64, t: f64) -> Self {
        let terms = zs
            .ordinates(t)
            .into_iter()
            .filter(|o| o.big_m.norm() > 0.0)
            .map(|o| {
                let c = o.coefficient(zs.beta0);
                let phase = c.arg();
                let turns = (phase / TAU).rem_euclid(1.0);
                SpectralTerm {
                    gamma: o.gamma,
                    amplitude: 2.0 * c.norm(),
                    phase,
                    phase_turns: (turns * 4294967296.0) as u64 as u32,
                }
            })
            .collect();
        Spectrum {
            beta0: zs.beta0,
            mean,
            truncation_t: t,
            terms,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ r_γ² / 2`, equal to `2 Σ |M(γ)|² / (β₀² + γ²)`.
    pub fn variance(&self) -> f64 {
        self.terms.iter().map(|t| 0.5 * t.amplitude * t.amplitude).sum()
    }

    /// `X` at phases `θ_γ ∈ [0, 1)` (one per term), in full precision.
    pub fn value_at_phases(&self, theta: &[f64]) -> f64 {
        self.mean
            - self
                .terms
                .iter()
                .zip(theta)
                .map(|(t, th)| t.amplitude * (TAU * th + t.phase).cos())
                .sum::<f64>()
    }

    /// `G_T(e^y)`.
    pub fn g_at_log(&self, y: f64) -> f64 {
        self.mean
            - self
                .terms
                .iter()
                .map(|t| t.amplitude * (t.gamma * y + t.phase).cos())
                .sum::<f64>()
    }
}

const TABLE_BITS: u32 = 10;

/// `(cos, sin)` of `2π k / 2^TABLE_BITS`.
fn turn_table() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..1u32 << TABLE_BITS)
            .map(|k| {
                let a = TAU * k as f64 / (1u32 << TABLE_BITS) as f64;
                (a.cos(), a.sin())
            })
            .collect()
    })
}

/// `cos(2π u / 2^32)`, accurate to a few ulps of 1.
#[inline]
pub fn cos_turns(u: u32) -> f64 {
    CosTurns::new().eval(u)
}

/// [`cos_turns`] with the table lookup hoisted out of hot loops.
#[derive(Clone, Copy)]
pub struct CosTurns(&'static [(f64, f64)]);

impl CosTurns {
    pub fn new() -> Self {
        CosTurns(turn_table())
    }

    #[inline]
    pub fn eval(self, u: u32) -> f64 {
        // Table value at the top bits, rotated by the small remainder angle h.
        let (c, s) = self.0[(u >> (32 - TABLE_BITS)) as usize];
        let h = (u & ((1 << (32 - TABLE_BITS)) - 1)) as f64 * (TAU / 4294967296.0);
        let h2 = h * h;
        // |h| < 2π/1024, so these truncations are below 1e-16.
        let cos_h = 1.0 - h2 * (0.5 - h2 / 24.0);
        let sin_h = h * (1.0 - h2 * (1.0 / 6.0 - h2 / 120.0));
        c * cos_h - s * sin_h
    }
}

impl Default for CosTurns {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_turns_accuracy() {
        let mut worst: f64 = 0.0;
        let mut u: u32 = 0;
        for _ in 0..200_000 {
            let exact = (TAU * u as f64 / 4294967296.0).cos();
            worst = worst.max((cos_turns(u) - exact).abs());
            u = u.wrapping_add(2_654_435_761);
        }
        for u in [0u32, 1 << 30, (1 << 30) + 1, 1 << 31, u32::MAX, 3 << 30] {
            let exact = (TAU * u as f64 / 4294967296.0).cos();
            worst = worst.max((cos_turns(u) - exact).abs());
        }
        assert!(worst < 1e-14, "worst error {worst}");
        assert_eq!(cos_turns(1 << 31), -1.0);
    }
}
