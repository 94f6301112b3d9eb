//! Fourier side of the LI model: `μ̂(ξ) = e^{−imξ} Π_γ J₀(r_γ ξ)` with
//! `r_γ = 2|M(γ)|/|β₀+iγ|`, and density recovery by inversion.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bessel::bessel_j0;
use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::zeros::ZeroSet;

/// Target for the decay bound when choosing the truncation Ξ.
pub const DECAY_TARGET: f64 = 1e-8;
/// Largest Ξ considered when the bound decays slowly (few ordinates).
pub const XI_CAP: f64 = 5000.0;
/// Upper limit on `t_max · Δξ`.
pub const PHASE_STEP: f64 = 0.1;
/// Refuse inversion if the raw mass is further than this from 1.
pub const MASS_GATE: f64 = 0.01;
/// Fewest ordinates for which inversion is attempted.
pub const MIN_ORDINATES: usize = 3;

/// Convention: `hat(ξ) = ∫ e^{−iξt} dμ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierProfile {
    pub xi_grid: Vec<f64>,
    pub hat_values: Vec<Complex64>,
    pub truncation_t: f64,
    pub mean: f64,
    pub n_ordinates: usize,
}

impl FourierProfile {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "xi,re,im")?;
        for (xi, h) in self.xi_grid.iter().zip(&self.hat_values) {
            writeln!(out, "{xi},{},{}", h.re, h.im)?;
        }
        Ok(())
    }
}

/// `e^{−imξ} Π J₀(r_γ |ξ|)` at one `ξ`.
pub fn hat_at(spec: &Spectrum, xi: f64) -> Complex64 {
    let product: f64 = spec
        .terms
        .iter()
        .map(|t| bessel_j0(t.amplitude * xi.abs()))
        .product();
    Complex64::cis(-spec.mean * xi) * product
}

pub fn fourier_hat(zs: &ZeroSet, mean: f64, t: f64, xi_grid: &[f64]) -> FourierProfile {
    let spec = Spectrum::new(zs, mean, t);
    fourier_hat_spectrum(&spec, xi_grid)
}

pub fn fourier_hat_spectrum(spec: &Spectrum, xi_grid: &[f64]) -> FourierProfile {
    let hat_values = xi_grid.par_iter().map(|&xi| hat_at(spec, xi)).collect();
    FourierProfile {
        xi_grid: xi_grid.to_vec(),
        hat_values,
        truncation_t: spec.truncation_t,
        mean: spec.mean,
        n_ordinates: spec.len(),
    }
}

/// `Π min(1, sqrt(2 / (π ξ r_γ)))`, an upper bound for `|hat(ξ)|` from
/// `|J₀(x)| <= sqrt(2/(πx))`.
pub fn decay_bound(spec: &Spectrum, xi: f64) -> f64 {
    spec.terms
        .iter()
        .map(|t| (2.0 / (PI * xi.abs() * t.amplitude)).sqrt().min(1.0))
        .product()
}

/// First Ξ (to within 1%) with `decay_bound(Ξ) < DECAY_TARGET`, or `XI_CAP`.
pub fn truncation_xi(spec: &Spectrum) -> f64 {
    if spec.is_empty() {
        return 0.0;
    }
    let mut hi = 1.0;
    while decay_bound(spec, hi) >= DECAY_TARGET {
        hi *= 2.0;
        if hi >= XI_CAP {
            return XI_CAP;
        }
    }
    let mut lo = hi / 2.0;
    while hi - lo > 0.01 * hi {
        let mid = 0.5 * (lo + hi);
        if decay_bound(spec, mid) < DECAY_TARGET {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Uniform `ξ` grid on `[0, Ξ]` with `t_extent · Δξ <= PHASE_STEP`.
pub fn xi_grid(spec: &Spectrum, t_extent: f64) -> Vec<f64> {
    let xi_max = truncation_xi(spec);
    let dxi = PHASE_STEP / t_extent.max(1.0);
    let steps = (xi_max / dxi).ceil() as usize;
    (0..=steps).map(|k| k as f64 * xi_max / steps.max(1) as f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub t_grid: Vec<f64>,
    pub phi: Vec<f64>,
    /// Trapezoid mass before renormalization.
    pub raw_mass: f64,
}

/// `φ(t) = (1/π) ∫_0^Ξ Re(e^{iξt} hat(ξ)) dξ` by the trapezoid rule on the
/// profile's grid (which must start at ξ = 0), renormalized to unit mass.
pub fn density_by_inversion(fp: &FourierProfile, t_grid: &[f64]) -> Result<DensityProfile> {
    if fp.n_ordinates < MIN_ORDINATES {
        return Err(Error::InsufficientDecay(format!(
            "{} ordinates; at least {MIN_ORDINATES} are needed for an integrable transform",
            fp.n_ordinates
        )));
    }
    if fp.xi_grid.first() != Some(&0.0) || fp.xi_grid.len() < 2 {
        return Err(Error::InsufficientDecay("the xi grid must start at 0".into()));
    }
    if t_grid.len() < 2 {
        return Err(Error::Domain("the t grid needs at least two points".into()));
    }
    let weights: Vec<f64> = (0..fp.xi_grid.len())
        .map(|k| {
            let left = if k > 0 { fp.xi_grid[k] - fp.xi_grid[k - 1] } else { 0.0 };
            let right = fp.xi_grid.get(k + 1).map_or(0.0, |&x| x - fp.xi_grid[k]);
            0.5 * (left + right)
        })
        .collect();
    let mut phi: Vec<f64> = t_grid
        .par_iter()
        .map(|&t| {
            let mut s = 0.0;
            for ((&xi, h), w) in fp.xi_grid.iter().zip(&fp.hat_values).zip(&weights) {
                let (sn, cs) = (xi * t).sin_cos();
                s += w * (cs * h.re - sn * h.im);
            }
            s / PI
        })
        .collect();
    let raw_mass = trapezoid(t_grid, &phi);
    if (raw_mass - 1.0).abs() > MASS_GATE {
        return Err(Error::InsufficientDecay(format!(
            "raw mass {raw_mass:.6} deviates from 1 by more than {MASS_GATE}"
        )));
    }
    for v in &mut phi {
        *v /= raw_mass;
    }
    Ok(DensityProfile {
        t_grid: t_grid.to_vec(),
        phi,
        raw_mass,
    })
}

pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

/// δ from the inverted density, with the numbers behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierDelta {
    pub delta: f64,
    /// Step-halving difference plus the truncation bound.
    pub error: f64,
    pub xi_max: f64,
    pub d_xi: f64,
    pub decay_bound_at_xi_max: f64,
    pub t_step: f64,
    pub t_range: (f64, f64),
    pub raw_mass: f64,
}

/// Uniform grid with step `h` covering `[lo, hi]` and containing 0.
pub fn t_grid_through_zero(lo: f64, hi: f64, h: f64) -> Vec<f64> {
    let k0 = (lo / h).floor() as i64;
    let k1 = (hi / h).ceil() as i64;
    (k0..=k1).map(|k| k as f64 * h).collect()
}

/// `μ([0, ∞))` from the inverted density on a grid through 0.
pub fn delta_by_inversion_spectrum(spec: &Spectrum) -> Result<FourierDelta> {
    let sd = spec.variance().sqrt();
    let lo = spec.mean - 8.0 * sd - 0.5;
    let hi = spec.mean + 8.0 * sd + 0.5;
    let t_extent = lo.abs().max(hi.abs());
    let grid = xi_grid(spec, t_extent);
    let fp = fourier_hat_spectrum(spec, &grid);
    let h = (sd / 200.0).clamp(1e-4, 0.01);
    let fine = t_grid_through_zero(lo, hi, h);
    let density = density_by_inversion(&fp, &fine)?;
    let delta_fine = tail_mass(&density);
    // Same data at twice the step for an error estimate.
    let coarse_t: Vec<f64> = fine.iter().step_by(2).copied().collect();
    let coarse_phi: Vec<f64> = density.phi.iter().step_by(2).copied().collect();
    let coarse = DensityProfile {
        t_grid: coarse_t.clone(),
        raw_mass: trapezoid(&coarse_t, &coarse_phi),
        phi: coarse_phi,
    };
    let delta_coarse = tail_mass(&coarse);
    let xi_max = *grid.last().unwrap_or(&0.0);
    let bound = decay_bound(spec, xi_max);
    Ok(FourierDelta {
        delta: delta_fine.clamp(0.0, 1.0),
        error: (delta_fine - delta_coarse).abs() + bound * (hi - lo) / PI,
        xi_max,
        d_xi: grid.get(1).copied().unwrap_or(0.0),
        decay_bound_at_xi_max: bound,
        t_step: h,
        t_range: (lo, hi),
        raw_mass: density.raw_mass,
    })
}

/// `∫_{t>=0} φ / ∫ φ` on the density's own grid.
fn tail_mass(d: &DensityProfile) -> f64 {
    let start = d.t_grid.partition_point(|&t| t < 0.0);
    let total = trapezoid(&d.t_grid, &d.phi);
    if start >= d.t_grid.len() {
        return 0.0;
    }
    trapezoid(&d.t_grid[start..], &d.phi[start..]) / total
}

pub fn delta_by_inversion(zs: &ZeroSet, mean: f64, t: f64) -> Result<FourierDelta> {
    delta_by_inversion_spectrum(&Spectrum::new(zs, mean, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::Component;

    fn zs(gammas: &[f64]) -> ZeroSet {
        ZeroSet::from_ordinates(0.5, Component::new("z", 1.0, 0, -1), gammas).unwrap()
    }

    #[test]
    fn hat_at_zero_and_bounded() {
        let z = zs(&[1.0, 2.5, 4.0, 7.0]);
        let fp = fourier_hat(&z, 0.7, 10.0, &[0.0, 0.3, 1.0, 5.0, 40.0]);
        assert_eq!(fp.hat_values[0], Complex64::new(1.0, 0.0));
        assert!(fp.hat_values.iter().all(|h| h.norm() <= 1.0 + 1e-15));
    }

    #[test]
    fn refuses_too_few_ordinates() {
        let z = zs(&[1.0, 2.0]);
        let fp = fourier_hat(&z, 0.0, 10.0, &[0.0, 1.0, 2.0]);
        assert!(matches!(
            density_by_inversion(&fp, &[0.0, 1.0]),
            Err(Error::InsufficientDecay(_))
        ));
    }

    #[test]
    fn grid_contains_zero() {
        let g = t_grid_through_zero(-1.03, 2.0, 0.25);
        assert!(g.contains(&0.0));
        assert!(g[0] <= -1.03 && *g.last().unwrap() >= 2.0);
    }
}
