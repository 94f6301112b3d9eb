//! `ζ(s)` and `L(s, χ)` for real primitive `χ`, via Euler–Maclaurin on the
//! Hurwitz decomposition `L(s, χ) = q^{−s} Σ_a χ(a) ζ(s, a/q)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::special::{bernoulli_over_factorial, ln_gamma};
use crate::arith::kronecker;
use crate::error::{domain, Error, Result};

/// Number of Bernoulli correction terms in the Euler–Maclaurin tail.
pub const EM_ORDER: usize = 40;
pub const DEFAULT_PRECISION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LFunction {
    Zeta,
    /// The Kronecker character `(d/·)` of a fundamental discriminant `d`.
    Dirichlet { discriminant: i64 },
}

impl LFunction {
    /// `zeta`, `dirichlet:q` (when `q` has a single fundamental
    /// discriminant of that size) or `dirichlet:d` with an explicit sign.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("zeta") {
            return Ok(LFunction::Zeta);
        }
        let Some(rest) = s.strip_prefix("dirichlet:") else {
            return domain(format!("unknown L-function '{s}'; expected zeta or dirichlet:q"));
        };
        let v: i64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad modulus in '{s}'")))?;
        if v.unsigned_abs() > 100 || v.unsigned_abs() < 3 {
            return domain(format!("modulus {} outside the supported range 3..=100", v.abs()));
        }
        if v < 0 || rest.trim().starts_with('+') {
            return if is_fundamental(v) {
                Ok(LFunction::Dirichlet { discriminant: v })
            } else {
                domain(format!("{v} is not a fundamental discriminant"))
            };
        }
        let candidates: Vec<i64> = [v, -v].into_iter().filter(|&d| is_fundamental(d)).collect();
        match candidates.as_slice() {
            [d] => Ok(LFunction::Dirichlet { discriminant: *d }),
            [] => domain(format!("no real primitive character has modulus {v}")),
            _ => domain(format!(
                "modulus {v} has two real primitive characters; write dirichlet:{v} with an explicit sign (+{v} or -{v})"
            )),
        }
    }

    pub fn modulus(&self) -> u64 {
        match self {
            LFunction::Zeta => 1,
            LFunction::Dirichlet { discriminant } => discriminant.unsigned_abs(),
        }
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u32 {
        match self {
            LFunction::Dirichlet { discriminant } if *discriminant < 0 => 1,
            _ => 0,
        }
    }

    pub fn character(&self, n: u64) -> f64 {
        match self {
            LFunction::Zeta => 1.0,
            LFunction::Dirichlet { discriminant } => kronecker(*discriminant, n) as f64,
        }
    }

    pub fn label(&self) -> String {
        match self {
            LFunction::Zeta => "zeta".into(),
            LFunction::Dirichlet { discriminant } => format!("chi_{discriminant}"),
        }
    }

    /// Main term of the count of zeros with `0 < γ <= t`.
    pub fn expected_zero_count(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let q = self.modulus() as f64;
        let main = t / (2.0 * PI) * (q * t / (2.0 * PI * std::f64::consts::E)).ln();
        match self {
            LFunction::Zeta => main + 7.0 / 8.0,
            LFunction::Dirichlet { .. } => {
                let chi_minus_one = if self.parity() == 1 { -1.0 } else { 1.0 };
                main - chi_minus_one / 8.0
            }
        }
    }
}

impl fmt::Display for LFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LFunction::Zeta => f.write_str("zeta"),
            LFunction::Dirichlet { discriminant } => write!(f, "dirichlet:{discriminant}"),
        }
    }
}

fn squarefree(n: u64) -> bool {
    let mut q = 2;
    while q * q <= n {
        if n % (q * q) == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// `d ≡ 1 mod 4` squarefree, or `d = 4m` with `m ≡ 2, 3 mod 4` squarefree.
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    if d.rem_euclid(4) == 1 {
        return squarefree(d.unsigned_abs());
    }
    if d % 4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && squarefree(m.unsigned_abs());
    }
    false
}

/// Evaluates an L-function on the critical line with a fixed number of
/// Euler–Maclaurin direct terms.
#[derive(Debug, Clone)]
pub struct CriticalLineEvaluator {
    pub lfunc: LFunction,
    pub em_terms: usize,
    pub precision_target: f64,
    t_max: f64,
    /// Direct terms `χ(m) m^{−1/2}` and `log m` for `m < q·N`.
    amp: Vec<f64>,
    logs: Vec<f64>,
    /// `(a/q, χ(a))` for the residues with `χ(a) ≠ 0`.
    shifts: Vec<(f64, f64)>,
}

impl CriticalLineEvaluator {
    pub fn new(lfunc: LFunction, em_terms: usize, precision_target: f64) -> Self {
        let q = lfunc.modulus();
        let em_terms = em_terms.max(4);
        let top = q as usize * em_terms;
        let mut amp = Vec::with_capacity(top);
        let mut logs = Vec::with_capacity(top);
        for m in 1..=top as u64 {
            let chi = lfunc.character(m);
            if chi != 0.0 {
                amp.push(chi / (m as f64).sqrt());
                logs.push((m as f64).ln());
            }
        }
        let shifts = (1..=q)
            .map(|a| (a as f64 / q as f64, lfunc.character(a)))
            .filter(|&(_, c)| c != 0.0)
            .collect();
        let mut ev = CriticalLineEvaluator {
            lfunc,
            em_terms,
            precision_target,
            t_max: 0.0,
            amp,
            logs,
            shifts,
        };
        ev.t_max = ev.solve_t_max();
        ev
    }

    /// The smallest term count whose validated range reaches `t_max`.
    pub fn for_range(lfunc: LFunction, t_max: f64, precision_target: f64) -> Self {
        let t_max = t_max.abs();
        let probe = |n: usize| {
            CriticalLineEvaluator::remainder_bound_for(lfunc, n, t_max) <= precision_target
        };
        let mut hi = 8;
        while !probe(hi) {
            hi *= 2;
        }
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if probe(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Self::new(lfunc, hi, precision_target)
    }

    /// Largest `|t|` where the remainder bound meets the precision target.
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    fn solve_t_max(&self) -> f64 {
        let bound = |t: f64| Self::remainder_bound_for(self.lfunc, self.em_terms, t);
        if bound(0.0) > self.precision_target {
            return 0.0;
        }
        let mut hi = 1.0;
        while bound(hi) <= self.precision_target {
            hi *= 2.0;
        }
        let mut lo = hi / 2.0;
        if hi == 1.0 {
            lo = 0.0;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if bound(mid) <= self.precision_target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Bound on the first omitted Euler–Maclaurin term, summed over shifts.
    pub fn remainder_bound_for(lfunc: LFunction, em_terms: usize, t: f64) -> f64 {
        let q = lfunc.modulus() as f64;
        let sigma = 0.5;
        let k = EM_ORDER + 1;
        let c = bernoulli_over_factorial()[k].abs();
        let w = em_terms as f64 + 1.0 / q;
        // log |s (s+1) ... (s+2k−2)| · w^{−σ−2k+1}
        let mut log_mag = c.ln() - (sigma + 2.0 * k as f64 - 1.0) * w.ln();
        for j in 0..(2 * k - 1) {
            log_mag += 0.5 * ((sigma + j as f64).powi(2) + t * t).ln();
        }
        let s_next = ((sigma + 2.0 * k as f64 - 1.0).powi(2) + t * t).sqrt();
        let ratio = s_next / (sigma + 2.0 * k as f64 - 1.0);
        let shifts = match lfunc {
            LFunction::Zeta => 1.0,
            _ => q,
        };
        shifts * q.powf(-sigma) * log_mag.exp() * ratio
    }

    /// `L(1/2 + it)`.
    pub fn evaluate(&self, t: f64) -> Result<Complex64> {
        if !(t.abs() <= self.t_max) {
            return Err(Error::Range { t, t_max: self.t_max });
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (&a, &l) in self.amp.iter().zip(&self.logs) {
            let (s, c) = (t * l).sin_cos();
            re += a * c;
            im -= a * s;
        }
        let s = Complex64::new(0.5, t);
        Ok(Complex64::new(re, im) + self.tail(s))
    }

    /// `L(s)` at an arbitrary point with `Re s > 0`, `s ≠ 1`, computing the
    /// direct terms afresh. No range check.
    pub fn evaluate_at(&self, s: Complex64) -> Complex64 {
        let q = self.lfunc.modulus();
        let mut sum = Complex64::new(0.0, 0.0);
        for m in 1..=(q as usize * self.em_terms) as u64 {
            let chi = self.lfunc.character(m);
            if chi != 0.0 {
                sum += chi * (-s * (m as f64).ln()).exp();
            }
        }
        sum + self.tail(s)
    }

    /// `q^{−s} Σ_a χ(a) [Euler–Maclaurin tail of ζ(s, a/q) from N]`.
    fn tail(&self, s: Complex64) -> Complex64 {
        let q = self.lfunc.modulus() as f64;
        let bern = bernoulli_over_factorial();
        let mut total = Complex64::new(0.0, 0.0);
        for &(frac, chi) in &self.shifts {
            let w = self.em_terms as f64 + frac;
            let lw = w.ln();
            let w_neg_s = (-s * lw).exp();
            let mut acc = w_neg_s * w / (s - 1.0) + 0.5 * w_neg_s;
            // term_k = c_k (s)_{2k−1} w^{−s−2k+1}
            let mut rising = s;
            let mut wpow = w_neg_s / w;
            let inv_w2 = 1.0 / (w * w);
            for k in 1..=EM_ORDER {
                acc += bern[k] * rising * wpow;
                let j = 2.0 * k as f64;
                rising *= (s + (j - 1.0)) * (s + j);
                wpow *= inv_w2;
            }
            total += chi * acc;
        }
        total * (-s * q.ln()).exp()
    }

    /// Phase `θ(t)` making `e^{iθ} L(1/2+it)` real.
    pub fn theta(&self, t: f64) -> f64 {
        let q = self.lfunc.modulus() as f64;
        let a = self.lfunc.parity() as f64;
        let z = Complex64::new((0.5 + a) / 2.0, t / 2.0);
        0.5 * t * (q / PI).ln() + ln_gamma(z).im
    }

    /// Hardy-style `Z(t) = Re(e^{iθ(t)} L(1/2+it))`.
    pub fn z_value(&self, t: f64) -> Result<f64> {
        Ok(self.rotated(t)?.re)
    }

    /// `e^{iθ(t)} L(1/2+it)`; the imaginary part vanishes up to rounding.
    pub fn rotated(&self, t: f64) -> Result<Complex64> {
        let l = self.evaluate(t)?;
        Ok(Complex64::from_polar(1.0, self.theta(t)) * l)
    }
}
