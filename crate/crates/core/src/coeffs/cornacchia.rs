//! Representations `p = a² + D b²` for the races over norms.

use crate::arith::{is_square, isqrt, sqrt_mod};
use crate::error::{domain, Result};

/// Solve `p = a² + D b²` for a prime `p` and `D ∈ {1, 2, 3, 4}`.
///
/// Returns `a >= 0, b > 0`; for `D = 1` the pair is ordered `a < b`.
/// Primes dividing `2D` are rejected.
pub fn cornacchia(p: u64, d: u64) -> Result<Option<(u64, u64)>> {
    if !(1..=4).contains(&d) {
        return domain(format!("unsupported D = {d}"));
    }
    if p < 2 || (2 * d) % p == 0 {
        return domain(format!("p = {p} divides 2D = {}", 2 * d));
    }
    if d == 4 {
        // a² + 4b² = a² + (2b)²; p odd so exactly one square is even.
        return Ok(cornacchia(p, 1)?.map(|(x, y)| if y % 2 == 0 { (x, y / 2) } else { (y, x / 2) }));
    }
    let neg_d = (p - d % p) % p;
    let Some(mut x0) = sqrt_mod(neg_d, p) else {
        return Ok(None);
    };
    if 2 * x0 < p {
        x0 = p - x0;
    }
    let (mut a, mut b) = (p, x0);
    let bound = isqrt(p);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    if rest % d != 0 || !is_square(rest / d) {
        return Ok(None);
    }
    let (x, y) = (b, isqrt(rest / d));
    if y == 0 {
        return Ok(None);
    }
    if d == 1 && x > y {
        return Ok(Some((y, x)));
    }
    Ok(Some((x, y)))
}

/// Exhaustive search over `b`, used as the reference for [`cornacchia`].
pub fn representation_by_search(p: u64, d: u64) -> Option<(u64, u64)> {
    let mut found = None;
    let mut b = 1;
    while d * b * b <= p {
        let rest = p - d * b * b;
        if is_square(rest) {
            let a = isqrt(rest);
            if d == 1 && a > b {
                found = found.or(Some((b, a)));
            } else {
                found = found.or(Some((a, b)));
            }
        }
        b += 1;
    }
    found
}

/// `(a² − D b²)/p` where `p = a² + D b²`, doubled when `with_factor2`.
/// Zero when `p` is not represented.
pub fn lambda_sum2sq(p: u64, d: u64, with_factor2: bool) -> Result<f64> {
    let Some((a, b)) = cornacchia(p, d)? else {
        return Ok(0.0);
    };
    let num = (a * a) as f64 - (d * b * b) as f64;
    let v = num / p as f64;
    Ok(if with_factor2 { 2.0 * v } else { v })
}

/// `cos 4θ_p = (a⁴ + b⁴ − 6a²b²)/p²` for `p = a² + b²`; zero for `p = 2`
/// and for `p ≡ 3 mod 4`.
pub fn lambda_gauss(p: u64) -> f64 {
    if p == 2 || p % 4 != 1 {
        return 0.0;
    }
    match cornacchia(p, 1) {
        Ok(Some((a, b))) => gauss_value(a, b),
        _ => 0.0,
    }
}

pub(crate) fn gauss_value(a: u64, b: u64) -> f64 {
    let (a2, b2) = ((a * a) as i128, (b * b) as i128);
    let num = a2 * a2 + b2 * b2 - 6 * a2 * b2;
    let p = a2 + b2;
    num as f64 / (p * p) as f64
}
