use primerace::coeffs::elliptic::{ap_bsgs, ap_legendre, BSGS_CUTOFF, PRESETS};
use primerace::coeffs::{
    cornacchia, ec_ap, lambda_gauss, lambda_sum2sq, CoefficientSource, EllipticCurve,
};
use primerace::coeffs::{dirichlet_pair_coeff, lambda_ec_pair, qr_race_coeff};
use primerace::primes::sieve_primes;
use primerace::Error;
use proptest::prelude::*;

/// Every `(a, b)` with `a >= 0, b > 0, a² + D b² = p`.
fn all_representations(p: u64, d: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut b = 1;
    while d * b * b <= p {
        let rest = p - d * b * b;
        let root = (rest as f64).sqrt() as u64;
        for a in root.saturating_sub(1)..=root + 1 {
            if a * a == rest {
                out.push((a, b));
            }
        }
        b += 1;
    }
    out
}

/// `#E(F_p)` by brute force on the long Weierstrass form.
fn count_points(c: [i64; 5], p: u64) -> i64 {
    let m = |v: i64| v.rem_euclid(p as i64);
    let [a1, a2, a3, a4, a6] = c;
    let mut n = 1;
    for x in 0..p as i64 {
        for y in 0..p as i64 {
            let lhs = m(y * y + a1 * x * y + a3 * y);
            let rhs = m(x * x * x + a2 * x * x + a4 * x + a6);
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

fn presets() -> Vec<EllipticCurve> {
    PRESETS
        .iter()
        .map(|(name, _, _)| EllipticCurve::preset(name).unwrap())
        .collect()
}

#[test]
fn cornacchia_agrees_with_exhaustive_search_below_1e5() {
    for p in sieve_primes(100_000) {
        for d in 1..=4u64 {
            if (2 * d) % p == 0 {
                assert!(cornacchia(p, d).is_err(), "p={p} D={d}");
                continue;
            }
            let got = cornacchia(p, d).unwrap();
            if let Some((a, b)) = got {
                assert_eq!(a * a + d * b * b, p, "p={p} D={d}");
                assert!(b > 0);
                if d == 1 {
                    assert!(a < b);
                }
            }
            let reps = all_representations(p, d);
            match got {
                None => assert!(reps.is_empty(), "p={p} D={d} missed {reps:?}"),
                Some(pair) => {
                    assert!(reps.contains(&pair), "p={p} D={d}");
                    // Uniqueness up to order means the canonical pick is forced.
                    let canonical: Vec<_> =
                        reps.iter().filter(|&&(a, b)| d != 1 || a < b).collect();
                    assert_eq!(canonical, vec![&pair], "p={p} D={d}");
                }
            }
        }
    }
}

#[test]
fn cornacchia_existence_matches_congruence_conditions() {
    // p = a² + b² iff p ≡ 1 (4); a² + 2b² iff p ≡ 1, 3 (8); a² + 3b² iff p ≡ 1 (3).
    for p in sieve_primes(100_000).into_iter().filter(|&p| p > 3) {
        assert_eq!(cornacchia(p, 1).unwrap().is_some(), p % 4 == 1, "p={p}");
        assert_eq!(cornacchia(p, 2).unwrap().is_some(), p % 8 == 1 || p % 8 == 3, "p={p}");
        assert_eq!(cornacchia(p, 3).unwrap().is_some(), p % 3 == 1, "p={p}");
        assert_eq!(cornacchia(p, 4).unwrap().is_some(), p % 4 == 1, "p={p}");
    }
}

#[test]
fn cornacchia_examples() {
    assert_eq!(cornacchia(5, 4).unwrap(), Some((1, 1)));
    assert_eq!(cornacchia(13, 4).unwrap(), Some((3, 1)));
    assert_eq!(cornacchia(3, 4).unwrap(), None);
    assert!(matches!(cornacchia(2, 4), Err(Error::Domain(_))));
}

#[test]
fn lambda_examples() {
    assert!((lambda_sum2sq(13, 4, true).unwrap() - 10.0 / 13.0).abs() < 1e-15);
    assert!((lambda_sum2sq(5, 4, true).unwrap() + 6.0 / 5.0).abs() < 1e-15);
    assert_eq!(lambda_sum2sq(3, 4, false).unwrap(), 0.0);
    assert_eq!(lambda_sum2sq(3, 4, true).unwrap(), 0.0);
    assert!((lambda_gauss(5) + 7.0 / 25.0).abs() < 1e-15);
    assert!((lambda_gauss(13) + 119.0 / 169.0).abs() < 1e-15);
    assert_eq!(lambda_gauss(7), 0.0);
    assert_eq!(lambda_gauss(2), 0.0);
    assert_eq!(dirichlet_pair_coeff(4, 3, 1, 7), 1.0);
    assert_eq!(dirichlet_pair_coeff(4, 3, 1, 5), -1.0);
    assert_eq!(dirichlet_pair_coeff(4, 3, 1, 2), 0.0);
    assert_eq!(qr_race_coeff(5, 11).unwrap(), 0.5);
    assert_eq!(qr_race_coeff(5, 17).unwrap(), -0.5);
    assert_eq!(qr_race_coeff(5, 5).unwrap(), 0.0);
}

#[test]
fn gauss_value_is_symmetric_in_the_decomposition() {
    for p in sieve_primes(20_000).into_iter().filter(|p| p % 4 == 1) {
        let (a, b) = cornacchia(p, 1).unwrap().unwrap();
        let f = |a: f64, b: f64| (a.powi(4) + b.powi(4) - 6.0 * a * a * b * b) / (p * p) as f64;
        assert!((f(a as f64, b as f64) - f(b as f64, a as f64)).abs() < 1e-15);
        assert!((lambda_gauss(p) - f(b as f64, a as f64)).abs() < 1e-14, "p={p}");
    }
}

#[test]
fn traces_match_enumeration_for_small_primes() {
    for curve in presets() {
        for p in sieve_primes(400) {
            if curve.has_bad_reduction(p) {
                assert!(matches!(ec_ap(&curve, p), Err(Error::BadReduction(q)) if q == p));
                continue;
            }
            let want = p as i64 + 1 - count_points(curve.coeffs, p);
            assert_eq!(ec_ap(&curve, p).unwrap(), want, "{curve} p={p}");
        }
    }
}

#[test]
fn e1_at_five_and_two() {
    let e1 = EllipticCurve::preset("E1").unwrap();
    assert_eq!(ec_ap(&e1, 5).unwrap(), 6 - count_points(e1.coeffs, 5));
    assert_eq!(ec_ap(&e1, 2).unwrap(), 3 - count_points(e1.coeffs, 2));
    let e2 = EllipticCurve::preset("E2").unwrap();
    let want = (6 - count_points(e1.coeffs, 5)) * (6 - count_points(e2.coeffs, 5));
    assert!((lambda_ec_pair(&e1, &e2, 5) - want as f64 / 5.0).abs() < 1e-15);
}

#[test]
fn bsgs_equals_legendre_across_the_switchover() {
    let primes: Vec<u64> = sieve_primes(BSGS_CUTOFF + 10_001)
        .into_iter()
        .filter(|&p| p >= BSGS_CUTOFF)
        .collect();
    assert!(!primes.is_empty());
    for curve in presets() {
        for &p in &primes {
            let fast = ap_bsgs(&curve, p).unwrap();
            let slow = ap_legendre(&curve, p).unwrap();
            assert_eq!(fast, slow, "{curve} p={p}");
        }
    }
}

#[test]
fn hasse_bound_everywhere_tested() {
    let bound = |p: u64| 2.0 * (p as f64).sqrt() + 1.0;
    for curve in presets() {
        for p in sieve_primes(200_000) {
            if let Ok(a) = ec_ap(&curve, p) {
                assert!((a as f64).abs() < bound(p), "{curve} p={p} a={a}");
            }
        }
        for p in [1_000_003u64, 10_000_019, 100_000_007] {
            let a = ec_ap(&curve, p).unwrap();
            assert!((a as f64).abs() < bound(p), "{curve} p={p}");
        }
        let a = ec_ap(&curve, 10_007).unwrap();
        assert!((a as f64).abs() <= 2.0 * 10_007f64.sqrt());
    }
}

#[test]
fn coefficients_respect_degree_bound() {
    let e1 = EllipticCurve::preset("E1").unwrap();
    let e2 = EllipticCurve::preset("E2").unwrap();
    let sources = vec![
        CoefficientSource::zeta(),
        CoefficientSource::dirichlet_pair(7, 3, 1).unwrap(),
        CoefficientSource::qr_race(8).unwrap(),
        CoefficientSource::sum_two_squares(2, true).unwrap(),
        CoefficientSource::sum_two_squares(3, false).unwrap(),
        CoefficientSource::gauss_angle(),
        CoefficientSource::ec_trace(e1.clone()),
        CoefficientSource::ec_pair(e1, e2),
    ];
    for s in &sources {
        for p in sieve_primes(30_000) {
            let v = s.lambda(p);
            assert!(v.abs() <= s.degree as f64 + 1e-12, "{s} p={p} λ={v}");
            assert_eq!(v, s.lambda(p), "{s} is not pure at {p}");
        }
    }
}

proptest! {
    #[test]
    fn ec_pair_is_symmetric(i in 0usize..4, j in 0usize..4, k in 0usize..2000) {
        let curves = presets();
        let p = sieve_primes(20_000)[k];
        prop_assert_eq!(
            lambda_ec_pair(&curves[i], &curves[j], p),
            lambda_ec_pair(&curves[j], &curves[i], p)
        );
    }

    #[test]
    fn bsgs_on_random_curves(a4 in -50i64..50, a6 in -50i64..50, k in 0usize..300) {
        let Ok(curve) = EllipticCurve::new([0, 0, 0, a4, a6]) else {
            return Ok(());
        };
        let p = sieve_primes(200_000).into_iter().filter(|&p| p > BSGS_CUTOFF).nth(k).unwrap();
        prop_assume!(!curve.has_bad_reduction(p));
        prop_assert_eq!(ap_bsgs(&curve, p).unwrap(), ap_legendre(&curve, p).unwrap());
    }
}
