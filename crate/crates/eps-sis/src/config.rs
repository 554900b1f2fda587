//! Run configuration: a flat, line-oriented `key = value` format with
//! `[sections]`, mirrored one-to-one by `--section.key value` command
//! line flags. Flags override file values. Unknown keys are rejected,
//! every subcommand declares its own key set, and the fully resolved
//! configuration (defaults included) is echoed with each run so any
//! output can be reproduced from its own artifacts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

fn config_err(key: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name: "config",
        reason: format!("key `{key}`: {}", reason.into()),
    }
}

/// An unvalidated dotted-key/value map, merged from file and flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    /// Parses the `key = value` / `[section]` format. Duplicate keys are
    /// rejected by name.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut section = String::new();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| {
                    config_err(line, format!("malformed section header on line {}", lineno + 1))
                })?;
                section = name.trim().to_string();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                config_err(line, format!("expected `key = value` on line {}", lineno + 1))
            })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(config_err(line, "empty key".to_string()));
            }
            let dotted = if section.is_empty() {
                key.to_string()
            } else {
                format!("{section}.{key}")
            };
            if entries.insert(dotted.clone(), value.trim().to_string()).is_some() {
                return Err(config_err(&dotted, "duplicate key"));
            }
        }
        Ok(Self { entries })
    }

    /// Loads and parses a config file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            config_err("config", format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    /// Sets one dotted key (flag values override file values).
    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    /// Overlays `other` on top of `self` (entries in `other` win).
    pub fn overlay(&mut self, other: RawConfig) {
        self.entries.extend(other.entries);
    }

    /// The merged entries.
    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.entries
    }
}

/// Declaration of one admissible key for a subcommand.
#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    /// Dotted key name.
    pub name: &'static str,
    /// Whether the key must be present.
    pub required: bool,
    /// Default used when the key is absent (ignored for required keys).
    pub default: Option<&'static str>,
    /// One-line description for `help` output.
    pub help: &'static str,
}

/// Keys every subcommand accepts.
pub const COMMON_KEYS: &[KeySpec] = &[
    KeySpec {
        name: "model.lambda",
        required: true,
        default: None,
        help: "infection contact rate (> 0)",
    },
    KeySpec {
        name: "model.mu",
        required: true,
        default: None,
        help: "recovery rate (> 0)",
    },
    KeySpec {
        name: "model.epsilon",
        required: true,
        default: None,
        help: "self-infection rate (> 0)",
    },
    KeySpec {
        name: "output.dir",
        required: false,
        default: Some("out"),
        help: "directory all output files are written into",
    },
    KeySpec {
        name: "output.format",
        required: false,
        default: Some("both"),
        help: "csv | json | both",
    },
    KeySpec {
        name: "master_seed",
        required: false,
        default: Some("0"),
        help: "64-bit master seed for all randomness",
    },
    KeySpec {
        name: "threads",
        required: false,
        default: Some("0"),
        help: "worker thread cap (0 = all cores); outputs do not depend on it",
    },
];

/// A validated, fully defaulted configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    map: BTreeMap<String, String>,
}

impl ResolvedConfig {
    /// Validates `raw` against the key specs: unknown keys are rejected,
    /// missing required keys are rejected, defaults are filled in.
    pub fn resolve(raw: &RawConfig, specs: &[&[KeySpec]]) -> Result<Self> {
        let known: Vec<&KeySpec> = specs.iter().flat_map(|s| s.iter()).collect();
        for key in raw.entries().keys() {
            if !known.iter().any(|s| s.name == key) {
                return Err(config_err(key, "unknown key for this subcommand"));
            }
        }
        let mut map = BTreeMap::new();
        for spec in known {
            match raw.entries().get(spec.name) {
                Some(v) => {
                    map.insert(spec.name.to_string(), v.clone());
                }
                None if spec.required => {
                    return Err(config_err(spec.name, "missing required key"));
                }
                None => {
                    if let Some(d) = spec.default {
                        map.insert(spec.name.to_string(), d.to_string());
                    }
                }
            }
        }
        Ok(Self { map })
    }

    /// The resolved entries (sorted by key).
    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    fn raw(&self, key: &str) -> Result<&str> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| config_err(key, "missing required key"))
    }

    /// A string value.
    pub fn get_str(&self, key: &str) -> Result<&str> {
        self.raw(key)
    }

    /// A float value.
    pub fn get_f64(&self, key: &str) -> Result<f64> {
        let s = self.raw(key)?;
        s.parse()
            .map_err(|_| config_err(key, format!("expected a number, got `{s}`")))
    }

    /// A nonnegative integer value.
    pub fn get_usize(&self, key: &str) -> Result<usize> {
        let s = self.raw(key)?;
        s.parse()
            .map_err(|_| config_err(key, format!("expected a nonnegative integer, got `{s}`")))
    }

    /// A 64-bit unsigned value.
    pub fn get_u64(&self, key: &str) -> Result<u64> {
        let s = self.raw(key)?;
        s.parse()
            .map_err(|_| config_err(key, format!("expected a 64-bit integer, got `{s}`")))
    }

    /// A comma-separated list of floats.
    pub fn get_f64_list(&self, key: &str) -> Result<Vec<f64>> {
        let s = self.raw(key)?;
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse()
                    .map_err(|_| config_err(key, format!("expected numbers, got `{part}`")))
            })
            .collect()
    }

    /// A comma-separated list of nonnegative integers.
    pub fn get_usize_list(&self, key: &str) -> Result<Vec<usize>> {
        let s = self.raw(key)?;
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse()
                    .map_err(|_| config_err(key, format!("expected integers, got `{part}`")))
            })
            .collect()
    }

    /// Renders the resolved configuration back into the file format
    /// (sections grouped, keys sorted), suitable for byte-identical
    /// reruns.
    pub fn to_config_text(&self) -> String {
        let mut top = String::new();
        let mut sections: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
        for (k, v) in &self.map {
            match k.split_once('.') {
                Some((section, key)) => {
                    sections.entry(section).or_default().push((key, v));
                }
                None => {
                    let _ = writeln!(top, "{k} = {v}");
                }
            }
        }
        let mut out = top;
        for (section, kvs) in sections {
            let _ = writeln!(out, "[{section}]");
            for (k, v) in kvs {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }
}
