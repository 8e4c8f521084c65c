//! Resolution of run settings from flags, a `key = value` config file,
//! the environment and built-in defaults, in that order of precedence.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use homophily_core::sweep::stepped;

use crate::Failure;

pub const SEED_ENV: &str = "HOMOPHILY_LAB_SEED";

/// Parses `key = value` lines. Blank lines and lines starting with `#`
/// are ignored.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Failure> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Failure::validation(format!("config line {}: expected 'key = value'", i + 1)))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

pub fn load_config(path: &Path) -> Result<BTreeMap<String, String>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Fully resolved settings of one subcommand, in a fixed key order.
pub struct Resolved {
    command: &'static str,
    values: Vec<(&'static str, Option<String>)>,
}

impl Resolved {
    /// Resolves each of `keys` from `flags`, then `file`, then (for `seed`)
    /// the environment, then `defaults`. Keys in `file` that the command
    /// does not use are rejected.
    pub fn new(
        command: &'static str,
        keys: &[&'static str],
        flags: &BTreeMap<&'static str, String>,
        file: &BTreeMap<String, String>,
        defaults: &[(&'static str, &str)],
    ) -> Result<Self, Failure> {
        for key in file.keys() {
            if key != "command" && !keys.contains(&key.as_str()) {
                return Err(Failure::validation(format!("config key '{key}' is not used by {command}")));
            }
        }
        let env_seed = std::env::var(SEED_ENV).ok();
        let values = keys
            .iter()
            .map(|&key| {
                let value = flags
                    .get(key)
                    .cloned()
                    .or_else(|| file.get(key).cloned())
                    .or_else(|| if key == "seed" { env_seed.clone() } else { None })
                    .or_else(|| defaults.iter().find(|(k, _)| *k == key).map(|(_, v)| v.to_string()));
                (key, value)
            })
            .collect();
        Ok(Self { command, values })
    }

    /// Config-file text that reproduces this run.
    pub fn echo(&self) -> String {
        let mut s = String::from("# resolved configuration\n");
        let _ = writeln!(s, "command = {}", self.command);
        for (key, value) in &self.values {
            if let Some(v) = value {
                let _ = writeln!(s, "{key} = {v}");
            }
        }
        s
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|(k, _)| *k == key)
            .and_then(|(_, v)| v.as_deref())
    }

    pub fn optional<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure> {
        self.raw(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Failure::validation(format!("invalid value for --{key}: {v:?}")))
            })
            .transpose()
    }

    pub fn required<T: FromStr>(&self, key: &str) -> Result<T, Failure> {
        self.optional(key)?
            .ok_or_else(|| Failure::validation(format!("missing required flag --{key}")))
    }

    pub fn grid(&self, key: &str) -> Result<Vec<f64>, Failure> {
        let spec = self
            .raw(key)
            .ok_or_else(|| Failure::validation(format!("missing required flag --{key}")))?;
        parse_grid(spec).map_err(|msg| Failure::validation(format!("invalid --{key} {spec:?}: {msg}")))
    }

    pub fn int_grid(&self, key: &str) -> Result<Vec<usize>, Failure> {
        self.grid(key)?
            .into_iter()
            .map(|v| {
                if v >= 0.0 && v.fract() == 0.0 {
                    Ok(v as usize)
                } else {
                    Err(Failure::validation(format!("--{key} values must be non-negative integers, got {v}")))
                }
            })
            .collect()
    }
}

/// `start:stop:step` (inclusive), a comma-separated list, or one value.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("not a number: {s:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) {
                return Err("step must be positive".into());
            }
            if stop < start {
                return Err("stop is below start".into());
            }
            Ok(stepped(start, stop, step))
        }
        [single] => single.split(',').map(num).collect(),
        _ => Err("expected start:stop:step or a comma-separated list".into()),
    }
}
