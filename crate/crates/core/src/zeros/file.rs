//! Zero files: `# beta0=`, one `# component=` line per component, then
//! `gamma,component,multiplicity` rows in ascending order.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::zeroset::{Component, ZeroEntry, ZeroSet};
use crate::error::{Error, Result};
use crate::fmt::padded;

pub const GAMMA_DECIMALS: usize = 9;

/// Render a zero set; `extra` header lines go out as `# key=value`.
pub fn format_zero_file(zs: &ZeroSet, extra: &[(&str, String)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# beta0={}\n", zs.beta0));
    for c in zs.components() {
        out.push_str(&format!(
            "# component={} weight={} central_order={} second_moment_pole={}\n",
            c.label, c.weight, c.central_order, c.second_moment_pole
        ));
    }
    for (k, v) in extra {
        out.push_str(&format!("# {k}={v}\n"));
    }
    for e in zs.entries() {
        out.push_str(&format!(
            "{},{},{}\n",
            padded(e.gamma, GAMMA_DECIMALS),
            zs.components()[e.component].label,
            e.multiplicity
        ));
    }
    out
}

pub fn save_zero_file(zs: &ZeroSet, path: &Path, extra: &[(&str, String)]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(format_zero_file(zs, extra).as_bytes())?;
    Ok(())
}

pub fn load_zero_file(path: &Path) -> Result<ZeroSet> {
    parse_zero_file(&fs::read_to_string(path)?)
}

fn parse_component(spec: &str, line: usize) -> Result<Component> {
    let err = |msg: String| Error::Parse { line, msg };
    let mut parts = spec.split_whitespace();
    let label = parts.next().ok_or_else(|| err("component without a label".into()))?;
    let mut weight = None;
    let mut central = None;
    let mut smp = None;
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got '{part}'")))?;
        match k {
            "weight" => weight = Some(v.parse::<f64>().map_err(|e| err(format!("weight: {e}")))?),
            "central_order" => central = Some(v.parse::<i32>().map_err(|e| err(format!("central_order: {e}")))?),
            "second_moment_pole" => {
                smp = Some(v.parse::<i32>().map_err(|e| err(format!("second_moment_pole: {e}")))?)
            }
            other => return Err(err(format!("unknown component key '{other}'"))),
        }
    }
    Ok(Component::new(
        label,
        weight.ok_or_else(|| err("component without weight".into()))?,
        central.ok_or_else(|| err("component without central_order".into()))?,
        smp.ok_or_else(|| err("component without second_moment_pole".into()))?,
    ))
}

pub fn parse_zero_file(text: &str) -> Result<ZeroSet> {
    let mut beta0 = None;
    let mut components: Vec<Component> = Vec::new();
    let mut entries = Vec::new();
    let mut last_gamma = 0.0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        if let Some(header) = raw.strip_prefix('#') {
            let header = header.trim();
            if let Some(v) = header.strip_prefix("beta0=") {
                beta0 = Some(v.trim().parse::<f64>().map_err(|e| err(format!("beta0: {e}")))?);
            } else if let Some(spec) = header.strip_prefix("component=") {
                components.push(parse_component(spec, line)?);
            }
            continue;
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        let [gamma, label, mult] = fields.as_slice() else {
            return Err(err(format!("expected 'gamma,component,multiplicity', got '{raw}'")));
        };
        let gamma: f64 = gamma.parse().map_err(|e| err(format!("gamma: {e}")))?;
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(err(format!("gamma = {gamma} must be positive")));
        }
        if gamma < last_gamma {
            return Err(err(format!("gamma = {gamma} is out of order")));
        }
        last_gamma = gamma;
        let component = components
            .iter()
            .position(|c| c.label == *label)
            .ok_or_else(|| err(format!("undeclared component '{label}'")))?;
        let multiplicity: u32 = mult.parse().map_err(|e| err(format!("multiplicity: {e}")))?;
        if multiplicity == 0 {
            return Err(err("multiplicity must be at least 1".into()));
        }
        entries.push(ZeroEntry {
            gamma,
            component,
            multiplicity,
        });
    }
    let beta0 = beta0.ok_or(Error::Parse {
        line: 0,
        msg: "missing '# beta0=' header".into(),
    })?;
    ZeroSet::new(beta0, components, entries).map_err(|e| Error::Parse {
        line: 0,
        msg: e.to_string(),
    })
}

/// A plain list of ordinates, one per line (blank lines and `#` comments
/// ignored), attached to a single `component`.
pub fn parse_plain_ordinates(text: &str, beta0: f64, component: Component) -> Result<ZeroSet> {
    let mut gammas = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let field = raw.split([',', ' ', '\t']).find(|s| !s.is_empty()).unwrap_or(raw);
        let gamma: f64 = field.parse().map_err(|e| Error::Parse {
            line: idx + 1,
            msg: format!("ordinate: {e}"),
        })?;
        if !(gamma > 0.0) {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("gamma = {gamma} must be positive"),
            });
        }
        gammas.push(gamma);
    }
    ZeroSet::from_ordinates(beta0, component, &gammas)
}
