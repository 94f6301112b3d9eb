//! Bernoulli coefficients and the complex log-gamma function.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

/// Highest `k` for which `B_{2k}/(2k)!` is tabulated.
pub const MAX_BERNOULLI: usize = 64;

/// `B_{2k}/(2k)!` for `k = 0..=MAX_BERNOULLI` (entry 0 unused).
///
/// Computed from `B_{2k}/(2k)! = (−1)^{k+1} 2 ζ(2k) / (2π)^{2k}`, which stays
/// accurate where the Bernoulli recurrence does not.
pub fn bernoulli_over_factorial() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![0.0; MAX_BERNOULLI + 1];
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            let zeta = even_zeta(2 * k as i32);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * zeta / (2.0 * PI).powi(2 * k as i32);
        }
        out
    })
}

/// `ζ(n)` for even `n >= 2`.
fn even_zeta(n: i32) -> f64 {
    match n {
        2 => PI * PI / 6.0,
        4 => PI.powi(4) / 90.0,
        6 => PI.powi(6) / 945.0,
        _ => {
            // Direct sum plus the integral tail; the tail is below 1e-20.
            let terms = 2000;
            let mut sum = 0.0;
            for m in (1..=terms).rev() {
                sum += (m as f64).powi(-n);
            }
            sum + (terms as f64 + 0.5).powi(1 - n) / (n - 1) as f64
        }
    }
}

/// Stirling coefficients `B_{2k} / (2k (2k−1))`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// `log Γ(z)` for `Re z > 0`, on a branch continuous in `Im z` (the imaginary
/// part is only meaningful modulo 2π for callers that exponentiate it).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 || z.re < 8.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}
