//! Per-prime coefficient maps `p ↦ λ(p)` for each race family.

pub mod cornacchia;
pub mod elliptic;

use std::fmt;

pub use cornacchia::{cornacchia, lambda_gauss, lambda_sum2sq};
pub use elliptic::{ec_ap, EllipticCurve};

use crate::arith::gcd;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Indicator difference `[p ≡ a] − [p ≡ b]` modulo `q`.
    DirichletPair { q: u64, a: u64, b: u64 },
    /// Residues against non-residues modulo `q`, weighted by the index ρ(q).
    QrRace { q: u64 },
    /// `(a² − D b²)/p` over `p = a² + D b²`.
    SumTwoSquares { d: u64, factor2: bool },
    /// `cos 4θ_p` for `p = a² + b²`.
    GaussAngle,
    /// `a_p / √p`.
    EcTrace(EllipticCurve),
    /// `a_p(E) a_p(E') / p`.
    EcPair(EllipticCurve, EllipticCurve),
    /// `λ(p) = 1`: the prime counting function against li.
    Zeta,
}

#[derive(Debug, Clone)]
pub struct CoefficientSource {
    pub family: Family,
    pub degree: u32,
    /// Order at `s = 1`, negative for a pole.
    pub pole_order_s1: i32,
    /// Order at `s = 1` of the second-moment function, negative for a pole.
    pub second_moment_pole: i32,
    pub label: String,
    residues: Vec<bool>,
    rho: f64,
}

impl CoefficientSource {
    fn build(family: Family, degree: u32, pole: i32, second: i32, label: String) -> Self {
        CoefficientSource {
            family,
            degree,
            pole_order_s1: pole,
            second_moment_pole: second,
            label,
            residues: Vec::new(),
            rho: 1.0,
        }
    }

    pub fn zeta() -> Self {
        Self::build(Family::Zeta, 1, -1, -1, "zeta".into())
    }

    pub fn dirichlet_pair(q: u64, a: u64, b: u64) -> Result<Self> {
        if q < 2 {
            return domain(format!("modulus q = {q} must be at least 2"));
        }
        let (a, b) = (a % q, b % q);
        if gcd(a, q) != 1 || gcd(b, q) != 1 {
            return domain(format!("residues {a}, {b} must be coprime to {q}"));
        }
        if a == b {
            return domain(format!("residues must differ modulo {q}"));
        }
        let label = format!("dirichlet(q={q};a={a},b={b})");
        Ok(Self::build(Family::DirichletPair { q, a, b }, 1, 0, 0, label))
    }

    pub fn qr_race(q: u64) -> Result<Self> {
        if q < 3 {
            return domain(format!("qr race needs q >= 3, got {q}"));
        }
        let mut residues = vec![false; q as usize];
        let mut units = 0u64;
        for x in 1..q {
            if gcd(x, q) == 1 {
                units += 1;
                residues[(x * x % q) as usize] = true;
            }
        }
        let squares = residues.iter().filter(|&&r| r).count() as u64;
        let mut src = Self::build(Family::QrRace { q }, 1, 0, 0, format!("qr(q={q})"));
        src.residues = residues;
        src.rho = (units / squares) as f64;
        Ok(src)
    }

    pub fn sum_two_squares(d: u64, factor2: bool) -> Result<Self> {
        if !(1..=4).contains(&d) {
            return domain(format!("unsupported D = {d}; expected 1, 2, 3 or 4"));
        }
        let label = format!("sum2sq(D={d}{})", if factor2 { ",factor2" } else { "" });
        Ok(Self::build(Family::SumTwoSquares { d, factor2 }, 2, 0, -1, label))
    }

    pub fn gauss_angle() -> Self {
        Self::build(Family::GaussAngle, 2, 0, -1, "gauss".into())
    }

    pub fn ec_trace(curve: EllipticCurve) -> Self {
        let label = format!("ec{curve}");
        Self::build(Family::EcTrace(curve), 2, 0, 1, label)
    }

    pub fn ec_pair(c1: EllipticCurve, c2: EllipticCurve) -> Self {
        let label = format!("ecpair{c1}{c2}");
        Self::build(Family::EcPair(c1, c2), 4, 0, -1, label)
    }

    /// The index of the squares in the unit group (1 unless a qr race).
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `λ(p)`. Primes where the family has no local factor give 0.
    pub fn lambda(&self, p: u64) -> f64 {
        match &self.family {
            Family::Zeta => 1.0,
            Family::DirichletPair { q, a, b } => dirichlet_pair_coeff(*q, *a, *b, p),
            Family::QrRace { q } => {
                if q % p == 0 {
                    0.0
                } else if self.residues[(p % q) as usize] {
                    (self.rho - 1.0) / self.rho
                } else {
                    -1.0 / self.rho
                }
            }
            Family::SumTwoSquares { d, factor2 } => {
                lambda_sum2sq(p, *d, *factor2).unwrap_or(0.0)
            }
            Family::GaussAngle => lambda_gauss(p),
            Family::EcTrace(c) => match ec_ap(c, p) {
                Ok(a) => a as f64 / (p as f64).sqrt(),
                Err(_) => 0.0,
            },
            Family::EcPair(c1, c2) => lambda_ec_pair(c1, c2, p),
        }
    }
}

impl fmt::Display for CoefficientSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// `+1` if `p ≡ a`, `−1` if `p ≡ b` modulo `q`, else 0.
pub fn dirichlet_pair_coeff(q: u64, a: u64, b: u64, p: u64) -> f64 {
    let r = p % q;
    if r == a % q {
        1.0
    } else if r == b % q {
        -1.0
    } else {
        0.0
    }
}

/// `(ρ−1)/ρ` on quadratic residues, `−1/ρ` on non-residues, 0 when `p | q`.
pub fn qr_race_coeff(q: u64, p: u64) -> Result<f64> {
    Ok(CoefficientSource::qr_race(q)?.lambda(p))
}

/// `a_p(c1) a_p(c2) / p`, zero when either curve is bad at `p`.
pub fn lambda_ec_pair(c1: &EllipticCurve, c2: &EllipticCurve, p: u64) -> f64 {
    match (ec_ap(c1, p), ec_ap(c2, p)) {
        (Ok(a1), Ok(a2)) => (a1 * a2) as f64 / p as f64,
        (Err(Error::BadReduction(_)), _) | (_, Err(Error::BadReduction(_))) => 0.0,
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_examples() {
        assert_eq!(dirichlet_pair_coeff(4, 3, 1, 7), 1.0);
        assert_eq!(dirichlet_pair_coeff(4, 3, 1, 5), -1.0);
        assert_eq!(dirichlet_pair_coeff(4, 3, 1, 2), 0.0);
        assert!(CoefficientSource::dirichlet_pair(4, 2, 1).is_err());
        assert!(CoefficientSource::dirichlet_pair(4, 1, 5).is_err());
    }

    #[test]
    fn qr_examples() {
        assert_eq!(qr_race_coeff(5, 11).unwrap(), 0.5);
        assert_eq!(qr_race_coeff(5, 7).unwrap(), -0.5);
        assert_eq!(qr_race_coeff(5, 5).unwrap(), 0.0);
        // (Z/8)^x has only the square 1, index 4.
        assert_eq!(CoefficientSource::qr_race(8).unwrap().rho(), 4.0);
    }

    #[test]
    fn unsupported_d() {
        assert!(CoefficientSource::sum_two_squares(5, false).is_err());
    }

    #[test]
    fn ec_pair_is_symmetric() {
        let e1 = EllipticCurve::preset("E1").unwrap();
        let e2 = EllipticCurve::preset("E2").unwrap();
        for p in [2u64, 3, 5, 7, 101, 65537] {
            assert_eq!(lambda_ec_pair(&e1, &e2, p), lambda_ec_pair(&e2, &e1, p));
        }
        assert_eq!(lambda_ec_pair(&e1, &e2, 37), 0.0);
    }
}
