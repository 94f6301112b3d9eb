//! Trajectory CSV: `# key=value` header comments, then `p,S` rows.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::RaceTrajectory;
use crate::error::{Error, Result};
use crate::fmt::sig;

/// Write the trajectory; `extra` header lines are emitted as `# key=value`.
pub fn write_trajectory<W: Write>(
    traj: &RaceTrajectory,
    extra: &[(&str, String)],
    mut out: W,
) -> Result<()> {
    writeln!(out, "# family={}", traj.label)?;
    writeln!(out, "# beta0={}", traj.beta0)?;
    writeln!(out, "# li_coefficient={}", traj.li_coefficient)?;
    writeln!(out, "# xmax={}", traj.xmax)?;
    for (k, v) in extra {
        writeln!(out, "# {k}={v}")?;
    }
    writeln!(out, "p,S")?;
    for &(p, s) in &traj.breakpoints {
        writeln!(out, "{p},{}", sig(s, 12))?;
    }
    Ok(())
}

pub fn export_trajectory(traj: &RaceTrajectory, path: &Path, extra: &[(&str, String)]) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_trajectory(traj, extra, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn read_trajectory<R: Read>(input: R) -> Result<RaceTrajectory> {
    let mut label = None;
    let mut beta0 = None;
    let mut li_coefficient = None;
    let mut xmax = None;
    let mut breakpoints = Vec::new();
    for (idx, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let line = line.trim();
        if line.is_empty() || line == "p,S" {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let Some((key, value)) = header.trim().split_once('=') else {
                continue;
            };
            let num = |v: &str| v.trim().parse::<f64>().map_err(|e| err(format!("{key}: {e}")));
            match key.trim() {
                "family" => label = Some(value.trim().to_string()),
                "beta0" => beta0 = Some(num(value)?),
                "li_coefficient" => li_coefficient = Some(num(value)?),
                "xmax" => xmax = Some(num(value)?),
                _ => {}
            }
            continue;
        }
        let (p, s) = line
            .split_once(',')
            .ok_or_else(|| err(format!("expected 'p,S', got '{line}'")))?;
        let p: u64 = p.trim().parse().map_err(|e| err(format!("prime: {e}")))?;
        let s: f64 = s.trim().parse().map_err(|e| err(format!("value: {e}")))?;
        if breakpoints.last().is_some_and(|&(q, _)| q >= p) {
            return Err(err(format!("breakpoint {p} out of order")));
        }
        breakpoints.push((p, s));
    }
    let missing = |what: &str| Error::Parse {
        line: 0,
        msg: format!("missing '# {what}=' header"),
    };
    Ok(RaceTrajectory {
        label: label.ok_or_else(|| missing("family"))?,
        beta0: beta0.ok_or_else(|| missing("beta0"))?,
        li_coefficient: li_coefficient.ok_or_else(|| missing("li_coefficient"))?,
        xmax: xmax.ok_or_else(|| missing("xmax"))?,
        breakpoints,
    })
}

pub fn import_trajectory(path: &Path) -> Result<RaceTrajectory> {
    read_trajectory(fs::File::open(path)?)
}
