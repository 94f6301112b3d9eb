//! Frobenius traces `a_p(E) = p + 1 − #E(F_p)`.
//!
//! Small primes use a Legendre-symbol sum; above [`BSGS_CUTOFF`] the group
//! order is pinned down by baby-step/giant-step on the curve and its
//! quadratic twist (Mestre).

use std::collections::HashMap;
use std::fmt;

use crate::arith::{inv_mod, isqrt, jacobi, mul_mod, prime_factors, sqrt_mod};
use crate::error::{domain, Error, Result};

pub const BSGS_CUTOFF: u64 = 1 << 16;

/// `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    pub coeffs: [i64; 5],
    pub analytic_rank_hint: Option<u32>,
    discriminant: i128,
}

/// Named curves: `(name, [a1,a2,a3,a4,a6], analytic rank)`.
pub const PRESETS: [(&str, [i64; 5], u32); 4] = [
    ("E1", [0, 0, 1, -1, 0], 1),
    ("E2", [0, 1, 1, -2, 0], 2),
    ("E0", [0, -1, 1, 0, 0], 0),
    ("E0prime", [0, 1, 1, 1, 0], 0),
];

impl EllipticCurve {
    pub fn new(coeffs: [i64; 5]) -> Result<Self> {
        let discriminant = discriminant(coeffs);
        if discriminant == 0 {
            return domain(format!("singular curve {coeffs:?}"));
        }
        Ok(EllipticCurve {
            coeffs,
            analytic_rank_hint: None,
            discriminant,
        })
    }

    pub fn preset(name: &str) -> Option<Self> {
        PRESETS
            .iter()
            .find(|(n, _, _)| n.eq_ignore_ascii_case(name))
            .map(|&(_, c, r)| {
                let mut e = EllipticCurve::new(c).expect("presets are nonsingular");
                e.analytic_rank_hint = Some(r);
                e
            })
    }

    /// A preset name or `"a1,a2,a3,a4,a6"`.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(e) = Self::preset(s.trim()) {
            return Ok(e);
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return domain(format!("curve '{s}': expected a preset or a1,a2,a3,a4,a6"));
        }
        let mut c = [0i64; 5];
        for (slot, part) in c.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::Domain(format!("curve '{s}': bad coefficient '{part}'")))?;
        }
        Self::new(c)
    }

    pub fn discriminant(&self) -> i128 {
        self.discriminant
    }

    pub fn has_bad_reduction(&self, p: u64) -> bool {
        self.discriminant % p as i128 == 0
    }

    /// Primes dividing the discriminant of this model.
    pub fn conductor_primes(&self) -> Vec<u64> {
        let d = self.discriminant.unsigned_abs();
        match u64::try_from(d) {
            Ok(d) => prime_factors(d),
            Err(_) => Vec::new(),
        }
    }

    fn b_invariants(&self) -> (i128, i128, i128) {
        let [a1, a2, a3, a4, a6] = self.coeffs.map(i128::from);
        (a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6)
    }

    fn c_invariants(&self) -> (i128, i128) {
        let (b2, b4, b6) = self.b_invariants();
        (b2 * b2 - 24 * b4, -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6)
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.coeffs;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

fn discriminant(coeffs: [i64; 5]) -> i128 {
    let [a1, a2, a3, a4, a6] = coeffs.map(i128::from);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
}

fn reduce(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

/// Frobenius trace at a prime of good reduction.
pub fn ec_ap(curve: &EllipticCurve, p: u64) -> Result<i64> {
    if curve.has_bad_reduction(p) {
        return Err(Error::BadReduction(p));
    }
    if p < BSGS_CUTOFF {
        ap_legendre(curve, p)
    } else {
        ap_bsgs(curve, p)
    }
}

/// Trace by counting: `−Σ_x ((4x³ + b2 x² + 2 b4 x + b6)/p)`, brute force at 2.
pub fn ap_legendre(curve: &EllipticCurve, p: u64) -> Result<i64> {
    if curve.has_bad_reduction(p) {
        return Err(Error::BadReduction(p));
    }
    if p == 2 {
        return Ok(p as i64 + 1 - count_points_naive(curve, p) as i64);
    }
    if p > u32::MAX as u64 {
        return domain(format!("p = {p} too large for point counting"));
    }
    let (b2, b4, b6) = curve.b_invariants();
    let (b2, b4, b6) = (reduce(b2, p), reduce(2 * b4, p), reduce(b6, p));
    let mut square = vec![false; p as usize];
    for x in 1..=(p - 1) / 2 {
        square[mul_mod(x, x, p) as usize] = true;
    }
    let mut sum: i64 = 0;
    for x in 0..p {
        let x2 = x * x % p;
        let v = (4 * (x2 * x % p) + b2 * x2 + b4 * x + b6) % p;
        if v != 0 {
            sum += if square[v as usize] { 1 } else { -1 };
        }
    }
    Ok(-sum)
}

/// `#E(F_p)` by checking every `(x, y)`; the reference oracle.
pub fn count_points_naive(curve: &EllipticCurve, p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = curve.coeffs.map(|c| reduce(c as i128, p));
    let mut count = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
        for y in 0..p {
            let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

/// Affine point or the point at infinity on `y² = x³ + Ax + B` over `F_p`.
type Point = Option<(u64, u64)>;

#[derive(Clone, Copy)]
struct ShortCurve {
    a: u64,
    b: u64,
    p: u64,
}

impl ShortCurve {
    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(self.a, x, p) + self.b) % p
    }

    fn neg(&self, pt: Point) -> Point {
        pt.map(|(x, y)| (x, (self.p - y) % self.p))
    }

    fn add(&self, u: Point, v: Point) -> Point {
        let p = self.p;
        let (Some((x1, y1)), Some((x2, y2))) = (u, v) else {
            return u.or(v);
        };
        let slope = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return None;
            }
            let num = (3 * mul_mod(x1, x1, p) + self.a) % p;
            mul_mod(num, inv_mod(2 * y1 % p, p).expect("p prime"), p)
        } else {
            let num = (y2 + p - y1) % p;
            mul_mod(num, inv_mod((x2 + p - x1) % p, p).expect("p prime"), p)
        };
        let x3 = (mul_mod(slope, slope, p) + 2 * p - x1 - x2) % p;
        let y3 = (mul_mod(slope, (x1 + p - x3) % p, p) + p - y1) % p;
        Some((x3, y3))
    }

    fn mul(&self, mut k: u64, pt: Point) -> Point {
        let mut acc = None;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Next point with abscissa `>= *x`, advancing `*x` past it.
    fn next_point(&self, x: &mut u64) -> Point {
        loop {
            let cand = *x % self.p;
            *x += 1;
            let r = self.rhs(cand);
            if let Some(y) = sqrt_mod(r, self.p) {
                return Some((cand, y));
            }
        }
    }

    /// Order of `pt`, knowing it divides some integer in `[lo, lo + width]`.
    fn order(&self, pt: Point, lo: u64, width: u64) -> u64 {
        let m = isqrt(width) + 1;
        let mut baby: HashMap<Point, u64> = HashMap::with_capacity(m as usize);
        let mut cur: Point = None;
        for j in 0..m {
            baby.entry(cur).or_insert(j);
            cur = self.add(cur, pt);
        }
        let step = self.neg(self.mul(m, pt));
        // Search j with (lo + i m + j) P = O, i.e. j P = −lo P − i m P.
        let mut giant = self.neg(self.mul(lo, pt));
        let mut multiple = None;
        for i in 0..=m {
            if let Some(&j) = baby.get(&giant) {
                multiple = Some(lo + i * m + j);
                break;
            }
            giant = self.add(giant, step);
        }
        let mut n = multiple.expect("group order lies in the Hasse interval");
        for q in prime_factors(n) {
            while n % q == 0 && self.mul(n / q, pt).is_none() {
                n /= q;
            }
        }
        n
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::arith::gcd(a, b) * b
}

/// Trace via Mestre's baby-step/giant-step on `E` and its quadratic twist.
///
/// Falls back to the Legendre sum in the rare case that the candidate
/// group order stays ambiguous.
pub fn ap_bsgs(curve: &EllipticCurve, p: u64) -> Result<i64> {
    if curve.has_bad_reduction(p) {
        return Err(Error::BadReduction(p));
    }
    if p < 230 || p > u32::MAX as u64 {
        return ap_legendre(curve, p);
    }
    let (c4, c6) = curve.c_invariants();
    let a = reduce(-27 * c4, p);
    let b = reduce(-54 * c6, p);
    let mut d = 2;
    while jacobi(d as i64, p) != -1 {
        d += 1;
    }
    let d2 = mul_mod(d, d, p);
    let e = ShortCurve { a, b, p };
    let twist = ShortCurve {
        a: mul_mod(a, d2, p),
        b: mul_mod(b, mul_mod(d2, d, p), p),
        p,
    };
    let w = isqrt(4 * p);
    let lo = p + 1 - w;
    let hi = p + 1 + w;
    let (mut lcm_e, mut lcm_t) = (1u64, 1u64);
    let (mut xe, mut xt) = (0u64, 0u64);
    for _ in 0..40 {
        let pt = e.next_point(&mut xe);
        lcm_e = lcm(lcm_e, e.order(pt, lo, hi - lo));
        let pt = twist.next_point(&mut xt);
        lcm_t = lcm(lcm_t, twist.order(pt, lo, hi - lo));
        let mut candidate = None;
        let mut count = 0;
        let mut n = lo.div_ceil(lcm_e) * lcm_e;
        while n <= hi {
            if (2 * p + 2 - n) % lcm_t == 0 {
                candidate = Some(n);
                count += 1;
                if count > 1 {
                    break;
                }
            }
            n += lcm_e;
        }
        if count == 1 {
            return Ok(p as i64 + 1 - candidate.expect("one candidate") as i64);
        }
    }
    ap_legendre(curve, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> EllipticCurve {
        EllipticCurve::preset("E1").unwrap()
    }

    #[test]
    fn preset_discriminants() {
        assert_eq!(e1().discriminant(), 37);
        assert_eq!(EllipticCurve::preset("E2").unwrap().discriminant(), 389);
        assert_eq!(EllipticCurve::preset("E0").unwrap().discriminant(), -11);
        assert_eq!(EllipticCurve::preset("E0prime").unwrap().discriminant(), -19);
        assert_eq!(e1().conductor_primes(), vec![37]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(EllipticCurve::parse("0,0,1,-1,0").unwrap().coeffs, e1().coeffs);
        assert!(EllipticCurve::parse("0,0,0,0,0").is_err());
        assert!(EllipticCurve::parse("1,2").is_err());
    }

    #[test]
    fn small_traces_match_enumeration() {
        let e = e1();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let naive = p as i64 + 1 - count_points_naive(&e, p) as i64;
            assert_eq!(ec_ap(&e, p).unwrap(), naive, "p={p}");
        }
        assert_eq!(ec_ap(&e, 2).unwrap(), -2);
        assert!(matches!(ec_ap(&e, 37), Err(Error::BadReduction(37))));
    }

    #[test]
    fn hasse_at_10007() {
        let a = ec_ap(&e1(), 10007).unwrap();
        assert!((a * a) as u64 <= 4 * 10007);
    }
}
