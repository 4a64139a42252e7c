//! Effective run configuration: defaults, then an optional `key = value`
//! file, then explicit flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub order: usize,
    pub cap: u32,
    pub precision: u32,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config { order: 20, cap: 3, precision: 128, format: Format::Text }
    }
}

impl Config {
    /// Applies a config file. Blank lines and `#` comments are ignored.
    pub fn load(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), n + 1))?;
            self.set(k.trim(), v.trim()).map_err(|e| format!("{}:{}: {e}", path.display(), n + 1))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let bad = |_| format!("invalid value {value:?} for {key}");
        match key {
            "order" => self.order = value.parse().map_err(bad)?,
            "cap" => self.cap = value.parse().map_err(bad)?,
            "precision" => self.precision = value.parse().map_err(bad)?,
            "format" => {
                self.format = match value {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    _ => return Err(format!("format must be text or json, got {value:?}")),
                }
            }
            _ => return Err(format!("unknown config key {key:?}")),
        }
        Ok(())
    }

    pub fn as_map(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("cap".to_string(), self.cap.to_string()),
            ("format".to_string(), self.format.name().to_string()),
            ("order".to_string(), self.order.to_string()),
            ("precision".to_string(), self.precision.to_string()),
        ])
    }

    /// SHA-256 of the sorted `key=value` lines.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for (k, v) in self.as_map() {
            h.update(format!("{k}={v}\n"));
        }
        h.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}
