//! `--config file.toml`: a top-level `command` plus one key per flag,
//! expanded into ordinary arguments ahead of any given on the command line.

use std::ffi::OsString;
use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use toml::Value;

/// Pull `--config` out of `argv` and splice the file's flags in.
pub fn expand_argv(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some((pos, path, width)) = find_config(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let (command, flags) = config_to_args(&text)?;
    let mut rest: Vec<OsString> = argv[..pos].to_vec();
    rest.extend(argv[pos + width..].iter().cloned());
    // Anything before the subcommand stays global; an explicit subcommand on
    // the command line must agree with the file.
    let sub = rest.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-'));
    let mut out = vec![rest[0].clone()];
    match sub.map(|k| k + 1) {
        Some(k) if is_subcommand(&rest[k]) => {
            if rest[k].to_string_lossy() != command {
                bail!(
                    "config command '{command}' conflicts with '{}'",
                    rest[k].to_string_lossy()
                );
            }
            out.extend(rest[1..=k].iter().cloned());
            out.extend(flags.into_iter().map(OsString::from));
            out.extend(rest[k + 1..].iter().cloned());
        }
        _ => {
            out.push(command.into());
            out.extend(flags.into_iter().map(OsString::from));
            out.extend(rest[1..].iter().cloned());
        }
    }
    Ok(out)
}

fn is_subcommand(arg: &OsString) -> bool {
    matches!(
        arg.to_string_lossy().as_ref(),
        "race" | "zeros" | "dist" | "compare" | "density"
    )
}

fn find_config(argv: &[OsString]) -> Option<(usize, String, usize)> {
    for (k, a) in argv.iter().enumerate().skip(1) {
        let s = a.to_string_lossy();
        if s == "--config" {
            return argv.get(k + 1).map(|p| (k, p.to_string_lossy().into_owned(), 2));
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some((k, p.to_owned(), 1));
        }
    }
    None
}

/// `(command, flags)` from a TOML document. Booleans become bare flags when
/// true, arrays repeat the flag, underscores in keys become dashes.
pub fn config_to_args(text: &str) -> Result<(String, Vec<String>)> {
    let table: toml::Table = text.parse().context("parsing config")?;
    let command = table
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| anyhow!("config needs a string `command`"))?
        .to_owned();
    let mut flags = Vec::new();
    for (key, value) in &table {
        if key == "command" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Array(items) => {
                for item in items {
                    flags.push(flag.clone());
                    flags.push(scalar(key, item)?);
                }
            }
            Value::Boolean(true) => flags.push(flag),
            Value::Boolean(false) => {}
            other => {
                flags.push(flag);
                flags.push(scalar(key, other)?);
            }
        }
    }
    Ok((command, flags))
}

fn scalar(key: &str, v: &Value) -> Result<String> {
    Ok(match v {
        Value::String(s) => s.clone(),
        Value::Integer(i) => i.to_string(),
        Value::Float(f) => f.to_string(),
        _ => bail!("unsupported value for `{key}`"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_from_toml() {
        let (cmd, flags) =
            config_to_args("command = \"race\"\nfamily = \"sum2sq\"\nD = 2\nxmax = 2e7\nfactor2 = true\n")
                .unwrap();
        assert_eq!(cmd, "race");
        assert_eq!(
            flags,
            ["--D", "2", "--factor2", "--family", "sum2sq", "--xmax", "20000000"]
        );
    }

    #[test]
    fn arrays_repeat() {
        let (_, flags) = config_to_args("command = \"compare\"\ntmax = [10, 100]\n").unwrap();
        assert_eq!(flags, ["--tmax", "10", "--tmax", "100"]);
    }

    #[test]
    fn missing_command() {
        assert!(config_to_args("xmax = 3").is_err());
    }
}
