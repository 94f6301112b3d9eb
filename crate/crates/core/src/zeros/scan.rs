//! Zero location by sign changes of the rotated function `Z(t)`.

use rayon::prelude::*;

use super::evaluator::CriticalLineEvaluator;
use crate::error::{domain, Error, Result};

pub const SCAN_STEP: f64 = 0.05;
pub const BISECTION_TOL: f64 = 1e-8;
/// Allowed gap between the found count and the main term before warning.
pub const COUNT_TOLERANCE: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroScan {
    pub zeros: Vec<f64>,
    /// Main term of the zero count over the interval.
    pub expected_count: f64,
    pub warning: Option<String>,
}

/// Ordinates in `[t_min, t_max]` where `Z` changes sign, refined to 1e-8.
pub fn find_zeros(ev: &CriticalLineEvaluator, t_min: f64, t_max: f64) -> Result<ZeroScan> {
    if !(t_min >= 0.0) {
        return domain(format!("t_min = {t_min} must be nonnegative"));
    }
    if !(t_max >= t_min) {
        return domain(format!("empty interval [{t_min}, {t_max}]"));
    }
    if t_max > ev.t_max() {
        return Err(Error::Range { t: t_max, t_max: ev.t_max() });
    }
    let steps = ((t_max - t_min) / SCAN_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|k| (t_min + k as f64 * SCAN_STEP).min(t_max))
        .collect();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&t| ev.z_value(t))
        .collect::<Result<_>>()?;
    let brackets: Vec<(f64, f64, f64, f64)> = (1..grid.len())
        .filter(|&k| grid[k] > grid[k - 1])
        .filter(|&k| values[k - 1] != 0.0 && (values[k - 1] < 0.0) != (values[k] < 0.0))
        .map(|k| (grid[k - 1], values[k - 1], grid[k], values[k]))
        .collect();
    let mut zeros: Vec<f64> = brackets
        .par_iter()
        .map(|&(a, fa, b, fb)| bisect(ev, a, fa, b, fb))
        .collect::<Result<_>>()?;
    // Exact zeros on grid points (the scan above attributes them to the
    // following bracket only when the next value is nonzero).
    for (k, &v) in values.iter().enumerate() {
        if v == 0.0 && grid[k] > 0.0 && !zeros.iter().any(|&z| (z - grid[k]).abs() < BISECTION_TOL) {
            zeros.push(grid[k]);
        }
    }
    zeros.retain(|&g| g > 0.0);
    zeros.sort_by(f64::total_cmp);
    zeros.dedup_by(|a, b| (*a - *b).abs() < BISECTION_TOL);

    let expected_count =
        ev.lfunc.expected_zero_count(t_max) - ev.lfunc.expected_zero_count(t_min);
    let gap = zeros.len() as f64 - expected_count;
    let warning = (gap.abs() > COUNT_TOLERANCE && t_max > 10.0).then(|| {
        format!(
            "found {} zeros of {} in [{t_min}, {t_max}] but the counting main term gives {expected_count:.2}; \
             zeros may be missing (close pairs) or the range may be unreliable",
            zeros.len(),
            ev.lfunc
        )
    });
    Ok(ZeroScan {
        zeros,
        expected_count,
        warning,
    })
}

fn bisect(ev: &CriticalLineEvaluator, mut a: f64, fa: f64, mut b: f64, _fb: f64) -> Result<f64> {
    let neg_a = fa < 0.0;
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        let fm = ev.z_value(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == neg_a {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
