use std::f64::consts::PI;

use primerace::limit::{
    bessel_j0, chebyshev_bound, delta_by_inversion, delta_estimate, density_by_inversion,
    empirical_cf, fourier_hat_spectrum, hat_at, sample_li, sample_li_spectrum,
    sample_time_average, t_grid_through_zero, trapezoid, xi_grid, BoundSide, DeltaMethod,
    DeltaParams, Spectrum, SERIES_LIMIT,
};
use primerace::zeros::{load_zero_file, Component, ZeroSet};
use primerace::Error;
use proptest::prelude::*;

fn data(name: &str) -> ZeroSet {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    load_zero_file(&path).unwrap()
}

fn zeta_like(gammas: &[f64]) -> ZeroSet {
    ZeroSet::from_ordinates(0.5, Component::new("zeta", 1.0, 0, -1), gammas).unwrap()
}

/// `(1/π) ∫_0^π cos(x sin θ) dθ` by the trapezoid rule, which converges
/// geometrically for this periodic integrand.
fn j0_by_quadrature(x: f64) -> f64 {
    let n = 2000.max(2 * x.abs() as usize + 200);
    let h = PI / n as f64;
    let inner: f64 = (1..n).map(|k| (x * (k as f64 * h).sin()).cos()).sum();
    (inner + 0.5 * (1.0 + 1.0)) * h / PI
}

#[test]
fn bessel_matches_quadrature() {
    let mut x = 0.0;
    while x <= 60.0 {
        let (got, want) = (bessel_j0(x), j0_by_quadrature(x));
        assert!((got - want).abs() < 1e-9, "x={x}: {got} vs {want}");
        x += 0.173;
    }
    for x in [SERIES_LIMIT - 1e-9, SERIES_LIMIT, SERIES_LIMIT + 1e-9, 250.0, 1e4] {
        assert!((bessel_j0(x) - j0_by_quadrature(x)).abs() < 1e-8, "x={x}");
    }
    assert_eq!(bessel_j0(-3.0), bessel_j0(3.0));
}

#[test]
fn bessel_first_root() {
    let (mut lo, mut hi) = (2.0, 3.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if bessel_j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((lo - 2.404826).abs() < 1e-6, "{lo}");
}

#[test]
fn sampling_is_deterministic_per_seed() {
    let zs = data("zeta_t100.zeros");
    let a = sample_li(&zs, zs.mean(), 100.0, 200_000, 7);
    let b = sample_li(&zs, zs.mean(), 100.0, 200_000, 7);
    let c = sample_li(&zs, zs.mean(), 100.0, 200_000, 8);
    assert_eq!(a, b);
    assert_ne!(a.mean, c.mean);
    assert_eq!(a.histogram.total(), 200_000);
}

#[test]
fn zeta_variance_and_symmetry() {
    let zs = data("zeta_t100.zeros");
    let s = sample_li(&zs, zs.mean(), 100.0, 1_000_000, 1);
    let rel = (s.variance - s.closed_form_variance).abs() / s.closed_form_variance;
    assert!(rel < 0.02, "{} vs {}", s.variance, s.closed_form_variance);
    assert!(s.skewness.abs() < 0.01, "skewness {}", s.skewness);
    assert!((s.mean - zs.mean()).abs() < 5.0 * s.mean_stderr + 1e-3);

    let centred = sample_li(&zs, 0.0, 100.0, 1_000_000, 2);
    assert!(centred.mean.abs() < 5.0 * centred.mean_stderr);
    assert!((centred.delta_estimate - 0.5).abs() < 5.0 * centred.delta_stderr + 1e-3);
    assert!(centred.skewness.abs() < 0.01);
}

#[test]
fn time_average_variance() {
    let zs = data("zeta_t100.zeros");
    let s = sample_time_average(&zs, zs.mean(), 50.0, 1e4, 1_000_000, 3).unwrap();
    let rel = (s.variance - s.closed_form_variance).abs() / s.closed_form_variance;
    assert!(rel < 0.05, "{} vs {}", s.variance, s.closed_form_variance);
    assert!(sample_time_average(&zs, zs.mean(), 50.0, 1.5, 10, 0).is_err());
}

#[test]
fn characteristic_function_of_one_zero() {
    let zs = zeta_like(&[14.134725141734693]);
    let spec = Spectrum::new(&zs, -1.0, 20.0);
    let xi: Vec<f64> = (0..=200).map(|k| k as f64 * 0.1).collect();
    let emp = empirical_cf(&spec, &xi, 1_000_000, 5);
    let amp = 2.0 / (0.25f64 + 14.134725141734693f64.powi(2)).sqrt();
    let sup = xi
        .iter()
        .zip(&emp)
        .map(|(&k, e)| {
            let model = hat_at(&spec, k);
            let oracle = num_complex::Complex64::cis(k) * j0_by_quadrature(amp * k);
            assert!((model - oracle).norm() < 1e-9);
            (model - e).norm()
        })
        .fold(0.0, f64::max);
    assert!(sup < 0.01, "sup {sup}");
}

#[test]
fn density_has_unit_mass_and_is_even_at_zero_mean() {
    let zs = data("zeta_t100.zeros");
    let spec = Spectrum::new(&zs, 0.0, 100.0);
    let sd = spec.variance().sqrt();
    let half = 8.0 * sd + 0.5;
    let fp = fourier_hat_spectrum(&spec, &xi_grid(&spec, half));
    let grid = t_grid_through_zero(-half, half, 0.005);
    let d = density_by_inversion(&fp, &grid).unwrap();
    assert!((d.raw_mass - 1.0).abs() < 1e-3, "{}", d.raw_mass);
    assert!((trapezoid(&d.t_grid, &d.phi) - 1.0).abs() < 1e-12);
    let n = d.phi.len();
    for k in 0..n {
        assert!((d.phi[k] - d.phi[n - 1 - k]).abs() < 1e-6);
        assert!(d.phi[k] > -1e-6);
    }
}

#[test]
fn mod4_density_matches_histogram() {
    let zs = data("chi-4_t2000.zeros");
    let spec = Spectrum::new(&zs, zs.mean(), 2000.0);
    let summary = sample_li_spectrum(&spec, 1_000_000, 11);
    let hist = &summary.histogram;
    let (lo, hi) = (hist.edges[0], *hist.edges.last().unwrap());
    let extent = lo.abs().max(hi.abs());
    let fp = fourier_hat_spectrum(&spec, &xi_grid(&spec, extent));
    // Coarser bins keep the sampling noise well below the tolerance.
    let merge = 8;
    let bins = hist.counts.len() / merge;
    let width = hist.bin_width() * merge as f64;
    let sub = 8;
    let grid: Vec<f64> = (0..=bins * sub)
        .map(|k| lo + k as f64 * width / sub as f64)
        .collect();
    let d = density_by_inversion(&fp, &grid).unwrap();
    let n = summary.n_samples as f64;
    let mut l1 = (hist.underflow + hist.overflow) as f64 / n;
    for b in 0..bins {
        let emp = hist.counts[b * merge..(b + 1) * merge].iter().sum::<u64>() as f64 / n;
        let range = b * sub..=(b + 1) * sub;
        let model = trapezoid(&d.t_grid[range.clone()], &d.phi[range]);
        l1 += (emp - model).abs();
    }
    assert!(l1 < 0.02, "L1 = {l1}");
}

#[test]
fn fourier_delta_sign_follows_the_mean() {
    for (name, t) in [("zeta_t100.zeros", 100.0), ("chi-4_t2000.zeros", 2000.0), ("chi-3_t1000.zeros", 1000.0)] {
        let zs = data(name);
        let fd = delta_by_inversion(&zs, zs.mean(), t).unwrap();
        assert_eq!((fd.delta - 0.5).signum(), zs.mean().signum(), "{name}: {}", fd.delta);
        assert!(fd.error < 1e-3, "{name}: {}", fd.error);
        let var = zs.variance(t);
        if var < zs.mean().powi(2) / 2.0 {
            assert!(chebyshev_bound(zs.mean(), var).unwrap().admits(fd.delta), "{name}");
        }
    }
}

#[test]
fn mod4_fourier_delta() {
    let zs = data("chi-4_t2000.zeros");
    let fd = delta_by_inversion(&zs, zs.mean(), 2000.0).unwrap();
    assert!((fd.delta - 0.9959).abs() < 0.005, "{}", fd.delta);
}

#[test]
fn delta_estimate_edge_cases() {
    let empty = zeta_like(&[]);
    let params = DeltaParams::default();
    for (mean, want) in [(-1.0, 0.0), (0.0, 1.0), (2.0, 1.0)] {
        let d = delta_estimate(&empty, mean, 100.0, DeltaMethod::FourierInversion, params).unwrap();
        assert_eq!(d.value, want);
    }
    let two = zeta_like(&[14.134725141734693, 21.022039638771555]);
    let refused = delta_estimate(&two, -1.0, 100.0, DeltaMethod::FourierInversion, params);
    assert!(matches!(refused, Err(Error::InsufficientDecay(_))));
    let params = DeltaParams {
        n_samples: 100_000,
        allow_fallback: true,
        ..params
    };
    let fallback = delta_estimate(&two, -1.0, 100.0, DeltaMethod::FourierInversion, params).unwrap();
    assert_eq!(fallback.method, DeltaMethod::Montecarlo);
    assert!(fallback.fallback_reason.is_some());
    // |X + 1| <= 0.14 + 0.095 < 1, so X is always negative.
    assert_eq!(fallback.value, 0.0);
}

#[test]
fn chebyshev_examples() {
    let b = chebyshev_bound(-2.0, 0.5).unwrap();
    assert_eq!((b.bound, b.side), (0.125, BoundSide::Upper));
    assert!(b.admits(0.1) && !b.admits(0.2));
    let b = chebyshev_bound(2.0, 0.5).unwrap();
    assert_eq!((b.bound, b.side), (0.875, BoundSide::Lower));
    assert!(b.admits(0.9) && !b.admits(0.8));
    assert!(chebyshev_bound(0.0, 1.0).is_none());
}

proptest! {
    #[test]
    fn hat_is_a_characteristic_function(xi in -200.0f64..200.0, t in 10.0f64..2000.0) {
        let zs = data("chi-3_t1000.zeros");
        let spec = Spectrum::new(&zs, zs.mean(), t);
        prop_assert!((hat_at(&spec, 0.0) - 1.0).norm() < 1e-15);
        prop_assert!(hat_at(&spec, xi).norm() <= 1.0 + 1e-12);
        prop_assert!((hat_at(&spec, -xi) - hat_at(&spec, xi).conj()).norm() < 1e-12);
    }

    #[test]
    fn chebyshev_bound_holds_for_sampled_delta(shift in 1.0f64..4.0, seed in 0u64..1000) {
        let zs = data("zeta_t100.zeros");
        let mean = -shift;
        let s = sample_li(&zs, mean, 100.0, 20_000, seed);
        let b = chebyshev_bound(mean, s.closed_form_variance).unwrap();
        prop_assert!(b.admits(s.delta_estimate - 4.0 * s.delta_stderr));
    }
}
