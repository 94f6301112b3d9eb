//! The logarithmic integral `li(x) = ∫_2^x dt / log t`.
//!
//! The origin is 2, so `li(2) = 0`. This differs from the principal-value
//! convention by the constant 1.04516...

use crate::error::{domain, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
const MAX_DEPTH: u32 = 48;

#[derive(Debug, Clone, Copy)]
pub struct LiEvaluator {
    pub lower_limit: f64,
    pub quadrature_tolerance: f64,
}

impl Default for LiEvaluator {
    fn default() -> Self {
        LiEvaluator {
            lower_limit: 2.0,
            quadrature_tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl LiEvaluator {
    pub fn with_tolerance(tol: f64) -> Self {
        LiEvaluator {
            quadrature_tolerance: tol,
            ..Self::default()
        }
    }

    pub fn li(&self, x: f64) -> Result<f64> {
        if !(x >= self.lower_limit) {
            return domain(format!("li({x}) needs x >= {}", self.lower_limit));
        }
        Ok(integrate(self.lower_limit, x, self.quadrature_tolerance))
    }

    /// A cursor for evaluating li at an increasing sequence of points.
    pub fn cursor(&self) -> LiCursor {
        LiCursor {
            x: self.lower_limit,
            value: 0.0,
            tol: self.quadrature_tolerance,
            origin: self.lower_limit,
        }
    }
}

/// `li(x)` with the default tolerance.
pub fn li(x: f64) -> Result<f64> {
    LiEvaluator::default().li(x)
}

/// ∫_a^b dt/log t, split at powers of two so each piece is smooth on its scale.
pub(crate) fn integrate(a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let mut cuts = vec![a];
    let mut c = 2f64.powi(a.log2().floor() as i32 + 1);
    while c < b {
        cuts.push(c);
        c *= 2.0;
    }
    cuts.push(b);
    let total = b - a;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for w in cuts.windows(2) {
        let piece = simpson_adaptive(w[0], w[1], tol * (w[1] - w[0]) / total);
        // Kahan summation over the pieces.
        let y = piece - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

fn f(t: f64) -> f64 {
    1.0 / t.ln()
}

fn simpson_adaptive(a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn recurse(a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    let floor = 4.0 * f64::EPSILON * whole.abs();
    if depth == 0 || delta.abs() <= 15.0 * tol.max(floor) {
        return left + right + delta / 15.0;
    }
    recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + recurse(m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Incremental li over nondecreasing arguments: each step integrates only
/// the gap from the previous point.
#[derive(Debug, Clone)]
pub struct LiCursor {
    x: f64,
    value: f64,
    tol: f64,
    origin: f64,
}

impl LiCursor {
    /// li at `x`; moving backwards restarts from the origin.
    pub fn at(&mut self, x: f64) -> Result<f64> {
        if !(x >= self.origin) {
            return domain(format!("li({x}) needs x >= {}", self.origin));
        }
        if x < self.x {
            self.x = self.origin;
            self.value = 0.0;
        }
        // Gap tolerance proportional to its share of the running total keeps
        // the accumulated error near the single-shot tolerance.
        let gap_tol = self.tol * ((x - self.x) / (x - self.origin).max(1.0)).max(1e-6);
        self.value += integrate(self.x, x, gap_tol);
        self.x = x;
        Ok(self.value)
    }

    /// Smallest `x >= lo` with `li(x) = target`, searched inside `[lo, hi]`
    /// where li is known to cross `target`. Does not move the cursor.
    pub fn inverse_within(&self, lo: f64, li_lo: f64, hi: f64, target: f64) -> f64 {
        // Newton on li(x) - target starting from the left end; li is
        // increasing and concave so the iterates stay in the bracket.
        let (mut a, mut b) = (lo, hi);
        let mut x = lo + (target - li_lo) * lo.ln();
        if !(x > a && x < b) {
            x = 0.5 * (a + b);
        }
        for _ in 0..100 {
            let val = li_lo + integrate(lo, x, self.tol * 1e-3) - target;
            if val > 0.0 {
                b = x;
            } else {
                a = x;
            }
            let step = val * x.ln();
            let mut next = x - step;
            if !(next > a && next < b) {
                next = 0.5 * (a + b);
            }
            if (next - x).abs() <= 1e-13 * x || b - a <= 1e-13 * x {
                return next;
            }
            x = next;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_zero() {
        assert_eq!(li(2.0).unwrap(), 0.0);
        assert!(li(1.5).is_err());
    }

    #[test]
    fn cursor_agrees_with_direct() {
        let ev = LiEvaluator::default();
        let mut cur = ev.cursor();
        for x in [3.0, 10.0, 1000.0, 1e5, 1e6] {
            let a = cur.at(x).unwrap();
            let b = ev.li(x).unwrap();
            assert!((a - b).abs() < 1e-8 * b.max(1.0), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn inverse_recovers_point() {
        let ev = LiEvaluator::default();
        let cur = ev.cursor();
        let lo = 1000.0;
        let li_lo = ev.li(lo).unwrap();
        let target = ev.li(1003.7).unwrap();
        let x = cur.inverse_within(lo, li_lo, 1010.0, target);
        assert!((x - 1003.7).abs() < 1e-8);
    }
}
