//! The explicit formula measured on data: normalized trajectory `E(e^y)`
//! against the truncated zero sum `G_T(e^y)`.

use serde::{Deserialize, Serialize};

use super::spectrum::Spectrum;
use crate::error::{domain, Result};
use crate::race::RaceTrajectory;
use crate::zeros::ZeroSet;

pub const DEFAULT_POINTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub y0: f64,
    pub y1: f64,
    pub n_points: usize,
    pub truncation_t: f64,
    pub rms_diff: f64,
    /// NaN when either side is constant on the sample points.
    pub correlation: f64,
    pub correlation_defined: bool,
}

/// Samples both sides at `n_points` uniform `y` in `[y0, y1]` (endpoints
/// included).
pub fn compare_empirical(
    traj: &RaceTrajectory,
    zs: &ZeroSet,
    mean: f64,
    t: f64,
    (y0, y1): (f64, f64),
    n_points: usize,
) -> Result<Comparison> {
    if (traj.beta0 - zs.beta0).abs() > 1e-12 {
        return domain(format!(
            "beta0 mismatch: trajectory {} vs zero set {}",
            traj.beta0, zs.beta0
        ));
    }
    if n_points < 2 {
        return domain("at least two sample points are needed");
    }
    if !(y0 < y1) || y0 < 2f64.ln() - 1e-12 || y1 > traj.xmax.ln() + 1e-9 {
        return domain(format!(
            "window [{y0}, {y1}] not inside the trajectory range [log 2, log {}]",
            traj.xmax
        ));
    }
    let ys: Vec<f64> = (0..n_points)
        .map(|k| y0 + (y1 - y0) * k as f64 / (n_points - 1) as f64)
        .map(|y| y.min(traj.xmax.ln()))
        .collect();
    let empirical = traj.normalized_at_sorted(&ys)?;
    let spec = Spectrum::new(zs, mean, t);
    let model: Vec<f64> = ys.iter().map(|&y| spec.g_at_log(y)).collect();
    let n = n_points as f64;
    let rms_diff = (empirical
        .iter()
        .zip(&model)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    let correlation = pearson(&empirical, &model);
    Ok(Comparison {
        y0,
        y1,
        n_points,
        truncation_t: t,
        rms_diff,
        correlation,
        correlation_defined: correlation.is_finite(),
    })
}

/// Pearson correlation; NaN if either series has zero variance.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    if saa == 0.0 || sbb == 0.0 {
        return f64::NAN;
    }
    sab / (saa * sbb).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_basics() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.5]) - 0.9979487).abs() < 1e-6);
        assert!(pearson(&[1.0, 1.0], &[0.0, 1.0]).is_nan());
    }
}
