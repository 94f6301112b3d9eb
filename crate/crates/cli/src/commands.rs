use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use primerace::arith::prime_factors;
use primerace::coeffs::{CoefficientSource, EllipticCurve};
use primerace::fmt::sig;
use primerace::limit::{
    compare_empirical, delta_by_inversion_spectrum, density_by_inversion, fourier_hat_spectrum,
    sample_li_spectrum, sample_time_average, t_grid_through_zero, xi_grid, DeltaMethod, Spectrum,
};
use primerace::race::{accumulate, export_trajectory, import_trajectory, RaceSpec};
use primerace::zeros::{
    find_zeros, format_zero_file, parse_plain_ordinates, parse_zero_file, Component,
    CriticalLineEvaluator, LFunction, ZeroSet,
};
use primerace::{sha256_hex, Error};

use crate::args::{
    CompareArgs, DensityArgs, DistArgs, FamilyKind, MethodArg, ModelArg, RaceArgs, ZeroInput,
    ZerosArgs,
};

const FORMAT_VERSION: &str = "1";

/// Write to `path`, or to standard output when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_json(path: Option<&Path>, doc: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    emit(path, &text)
}

fn file_record(path: &Path) -> Result<Value> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(json!({ "path": path.display().to_string(), "sha256": sha256_hex(&bytes) }))
}

fn curve(name: Option<&str>, flag: &str) -> Result<EllipticCurve> {
    let name = name.with_context(|| format!("--{flag} is required for this family"))?;
    match EllipticCurve::preset(name) {
        Some(c) => Ok(c),
        None => Ok(EllipticCurve::parse(name)?),
    }
}

fn euler_phi(q: u64) -> u64 {
    prime_factors(q).iter().fold(q, |acc, p| acc / p * (p - 1))
}

fn race_source(a: &RaceArgs) -> Result<(CoefficientSource, f64)> {
    let need = |v: Option<u64>, flag: &str| {
        v.with_context(|| format!("--{flag} is required for family {:?}", a.family))
    };
    let source = match a.family {
        FamilyKind::Zeta => CoefficientSource::zeta(),
        FamilyKind::Dirichlet => {
            CoefficientSource::dirichlet_pair(need(a.q, "q")?, need(a.a, "a")?, need(a.b, "b")?)?
        }
        FamilyKind::Qr => CoefficientSource::qr_race(need(a.q, "q")?)?,
        FamilyKind::Sum2sq => CoefficientSource::sum_two_squares(need(a.d, "D")?, a.factor2)?,
        FamilyKind::Gauss => CoefficientSource::gauss_angle(),
        FamilyKind::Ec => CoefficientSource::ec_trace(curve(a.curve.as_deref(), "curve")?),
        FamilyKind::EcPair => CoefficientSource::ec_pair(
            curve(a.curve.as_deref(), "curve")?,
            curve(a.curve2.as_deref(), "curve2")?,
        ),
    };
    let weight = if a.phi_q_scaling {
        match a.family {
            FamilyKind::Dirichlet | FamilyKind::Qr => euler_phi(need(a.q, "q")?) as f64,
            _ => bail!("--phi-q-scaling applies to the dirichlet and qr families only"),
        }
    } else {
        1.0
    };
    Ok((source, weight))
}

pub fn race(a: &RaceArgs, config: &Value) -> Result<()> {
    if !(a.xmax >= 2.0) || !a.xmax.is_finite() {
        bail!("--xmax must be a finite number >= 2, got {}", a.xmax);
    }
    let (source, weight) = race_source(a)?;
    let spec = RaceSpec::new(vec![(source, weight)], a.beta0)?;
    eprintln!("race {}: accumulating to x = {}", spec.label(), a.xmax);
    let start = Instant::now();
    let traj = accumulate(&spec, a.xmax)?;
    eprintln!(
        "race {}: {} breakpoints in {:.1?}",
        traj.label,
        traj.breakpoints.len(),
        start.elapsed()
    );
    let y0 = a.y0.unwrap_or(2f64.ln());
    let stats = traj.stats(y0, a.xmax.ln())?;
    let output = match &a.out {
        Some(path) => {
            let extra = [("config", config.to_string()), ("weight", weight.to_string())];
            export_trajectory(&traj, path, &extra)?;
            Some(file_record(path)?)
        }
        None => None,
    };
    let doc = json!({
        "format": "primerace.race",
        "version": FORMAT_VERSION,
        "config": config,
        "family": traj.label,
        "weight": weight,
        "beta0": traj.beta0,
        "li_coefficient": traj.li_coefficient,
        "xmax": traj.xmax,
        "breakpoints": traj.breakpoints.len(),
        "stats": stats,
        "trajectory": output,
    });
    emit_json(a.report.as_deref(), &doc)
}

pub fn zeros(a: &ZerosArgs, config: &Value) -> Result<()> {
    if !(a.tmax > 0.0) || !a.tmax.is_finite() {
        bail!("--tmax must be positive, got {}", a.tmax);
    }
    if !(a.tmin >= 0.0 && a.tmin < a.tmax) {
        bail!("--tmin must lie in [0, tmax), got {}", a.tmin);
    }
    let lfunc = LFunction::parse(&a.lfunc)?;
    let ev = match a.em_terms {
        Some(n) => CriticalLineEvaluator::new(lfunc, n, a.precision),
        None => CriticalLineEvaluator::for_range(lfunc, a.tmax, a.precision),
    };
    eprintln!(
        "zeros {lfunc}: {} Euler-Maclaurin terms, validated to t = {:.3}",
        ev.em_terms,
        ev.t_max()
    );
    let start = Instant::now();
    let scan = find_zeros(&ev, a.tmin, a.tmax)?;
    eprintln!(
        "zeros {lfunc}: {} ordinates in [{}, {}] (main term {:.2}) in {:.1?}",
        scan.zeros.len(),
        a.tmin,
        a.tmax,
        scan.expected_count,
        start.elapsed()
    );
    if let Some(w) = &scan.warning {
        eprintln!("warning: {w}");
    }
    let label = a.label.clone().unwrap_or_else(|| lfunc.label());
    let component = Component::new(&label, a.weight, a.central_order, a.second_moment_pole);
    let zs = ZeroSet::from_ordinates(0.5, component, &scan.zeros)?;
    let mut extra = vec![
        ("lfunc", lfunc.to_string()),
        ("tmin", a.tmin.to_string()),
        ("tmax", a.tmax.to_string()),
        ("em_terms", ev.em_terms.to_string()),
        ("validated_t_max", ev.t_max().to_string()),
        ("count", scan.zeros.len().to_string()),
        ("expected_count", format!("{:.4}", scan.expected_count)),
    ];
    if let Some(w) = &scan.warning {
        extra.push(("warning", w.clone()));
    }
    extra.push(("config", config.to_string()));
    emit(a.out.as_deref(), &format_zero_file(&zs, &extra))
}

/// The zero set, its file digest, and the mean to use.
fn load_zeros(input: &ZeroInput) -> Result<(ZeroSet, String, f64)> {
    let path = &input.zeros;
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = sha256_hex(&bytes);
    if let Some(expected) = &input.zeros_sha256 {
        if !expected.trim().eq_ignore_ascii_case(&digest) {
            bail!(
                "digest mismatch for {}: file has {digest}, expected {expected}",
                path.display()
            );
        }
    }
    let text = String::from_utf8(bytes).context("zero file is not UTF-8")?;
    let mut zs = if input.plain {
        let c = Component::new("plain", 1.0, 0, -1);
        parse_plain_ordinates(&text, input.plain_beta0, c)?
    } else {
        parse_zero_file(&text)?
    };
    if let Some(w) = input.weight {
        let components = zs
            .components()
            .iter()
            .map(|c| Component::new(&c.label, w, c.central_order, c.second_moment_pole))
            .collect();
        zs = ZeroSet::new(zs.beta0, components, zs.entries().to_vec())?;
    }
    let mean = input.mean.unwrap_or_else(|| zs.mean());
    Ok((zs, digest, mean))
}

fn truncation(zs: &ZeroSet, tmax: Option<f64>) -> Result<f64> {
    let t = tmax.unwrap_or_else(|| zs.max_gamma());
    if !(t >= 0.0) {
        bail!("--tmax must be nonnegative, got {t}");
    }
    Ok(t)
}

fn write_profile(spec: &Spectrum, extent: f64, path: &Path) -> Result<()> {
    let grid = xi_grid(spec, extent);
    let fp = fourier_hat_spectrum(spec, &grid);
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    fp.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

pub fn dist(a: &DistArgs, config: &Value) -> Result<()> {
    if a.n == 0 {
        bail!("--n must be at least 1");
    }
    let (zs, digest, mean) = load_zeros(&a.input)?;
    let t = truncation(&zs, a.tmax)?;
    let spec = Spectrum::new(&zs, mean, t);
    eprintln!(
        "dist: {} ordinates up to T = {t}, mean {mean}, {} samples",
        spec.len(),
        a.n
    );
    let start = Instant::now();
    let mut summary = match a.model {
        ModelArg::Li => sample_li_spectrum(&spec, a.n, a.seed),
        ModelArg::TimeAverage => {
            if a.method == MethodArg::FourierInversion {
                bail!("fourier_inversion describes the LI model; use --model li");
            }
            let y_max = a.y_max.context("--y-max is required for the time-average model")?;
            sample_time_average(&zs, mean, t, y_max, a.n, a.seed)?
        }
    };
    eprintln!("dist: sampling done in {:.1?}", start.elapsed());
    summary.zero_file_digest = Some(digest.clone());
    let mut fallback = None;
    if a.method == MethodArg::FourierInversion {
        if spec.is_empty() {
            summary.delta_method = DeltaMethod::FourierInversion;
            summary.delta_stderr = 0.0;
        } else {
            match delta_by_inversion_spectrum(&spec) {
                Ok(fd) => {
                    summary.delta_estimate = fd.delta;
                    summary.delta_stderr = fd.error;
                    summary.delta_method = DeltaMethod::FourierInversion;
                    summary.fourier = Some(fd);
                }
                Err(Error::InsufficientDecay(why)) if a.allow_fallback => {
                    eprintln!("warning: inversion refused ({why}); using Monte Carlo");
                    fallback = Some(why);
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    if let Some(path) = &a.profile_out {
        let sd = spec.variance().sqrt();
        write_profile(&spec, mean.abs() + 8.0 * sd + 0.5, path)?;
    }
    eprintln!(
        "dist: delta = {} ± {} ({:?})",
        summary.delta_estimate, summary.delta_stderr, summary.delta_method
    );
    let doc = json!({
        "format": "primerace.distribution",
        "version": FORMAT_VERSION,
        "config": config,
        "inputs": { "zeros": { "path": a.input.zeros.display().to_string(), "sha256": digest } },
        "delta_fallback": fallback,
        "summary": summary,
    });
    emit_json(a.out.as_deref(), &doc)
}

pub fn compare(a: &CompareArgs, config: &Value) -> Result<()> {
    let traj = import_trajectory(&a.trajectory)
        .with_context(|| format!("reading {}", a.trajectory.display()))?;
    let traj_record = file_record(&a.trajectory)?;
    let (zs, digest, mean) = load_zeros(&a.input)?;
    let y0 = a.y0.unwrap_or(2f64.ln());
    let y1 = a.y1.unwrap_or(traj.xmax.ln());
    let mut results = Vec::new();
    for &t in &a.tmax {
        let c = compare_empirical(&traj, &zs, mean, t, (y0, y1), a.points)?;
        eprintln!(
            "compare: T = {t}: rms {:.6}, correlation {}",
            c.rms_diff,
            if c.correlation_defined { format!("{:.6}", c.correlation) } else { "undefined".into() }
        );
        results.push(c);
    }
    let doc = json!({
        "format": "primerace.compare",
        "version": FORMAT_VERSION,
        "config": config,
        "inputs": {
            "trajectory": traj_record,
            "zeros": { "path": a.input.zeros.display().to_string(), "sha256": digest },
        },
        "mean": mean,
        "comparisons": results,
    });
    emit_json(a.out.as_deref(), &doc)
}

pub fn density(a: &DensityArgs, config: &Value) -> Result<()> {
    let (zs, digest, mean) = load_zeros(&a.input)?;
    let t = truncation(&zs, a.tmax)?;
    let spec = Spectrum::new(&zs, mean, t);
    let sd = spec.variance().sqrt();
    let lo = a.t_min.unwrap_or(mean - 8.0 * sd - 0.5);
    let hi = a.t_max.unwrap_or(mean + 8.0 * sd + 0.5);
    if !(lo < hi) {
        bail!("empty density range [{lo}, {hi}]");
    }
    let step = a.t_step.unwrap_or((sd / 200.0).clamp(1e-4, 0.01));
    if !(step > 0.0) {
        bail!("--t-step must be positive");
    }
    let extent = lo.abs().max(hi.abs());
    let grid = xi_grid(&spec, extent);
    let fp = fourier_hat_spectrum(&spec, &grid);
    let ts = t_grid_through_zero(lo, hi, step);
    let dens = density_by_inversion(&fp, &ts)?;
    eprintln!(
        "density: {} points, raw mass {:.8}, xi_max {}",
        ts.len(),
        dens.raw_mass,
        grid.last().copied().unwrap_or(0.0)
    );
    if let Some(path) = &a.profile_out {
        let mut out = std::io::BufWriter::new(fs::File::create(path)?);
        fp.write_csv(&mut out)?;
        out.flush()?;
    }
    let mut text = String::new();
    for (k, v) in [
        ("zeros_sha256", digest),
        ("mean", mean.to_string()),
        ("truncation_t", t.to_string()),
        ("n_ordinates", spec.len().to_string()),
        ("raw_mass", dens.raw_mass.to_string()),
        ("xi_max", grid.last().copied().unwrap_or(0.0).to_string()),
        ("config", config.to_string()),
    ] {
        text.push_str(&format!("# {k}={v}\n"));
    }
    text.push_str("t,phi\n");
    for (x, p) in dens.t_grid.iter().zip(&dens.phi) {
        text.push_str(&format!("{},{}\n", sig(*x, 12), sig(*p, 12)));
    }
    emit(a.out.as_deref(), &text)
}
