//! Flat `key=value` scenario files. Blank lines and `#` comments are skipped.

use std::collections::BTreeMap;
use std::fs;

use crate::error::CliError;

const KEYS: &[&str] = &[
    "ambient", "degree", "genus", "window", "rows", "format", "ci", "via", "flavor",
];

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Scenario {
    values: BTreeMap<String, String>,
}

impl Scenario {
    pub fn load(path: &str) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?;
        Self::parse(path, &text)
    }

    pub fn parse(path: &str, text: &str) -> Result<Self, CliError> {
        let err = |line: usize, msg: String| CliError::Scenario {
            path: path.to_string(),
            line,
            msg,
        };
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(idx + 1, format!("expected key=value, got {line:?}")))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(err(idx + 1, format!("unknown key {key:?}")));
            }
            if values
                .insert(key.to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(err(idx + 1, format!("duplicate key {key:?}")));
            }
        }
        Ok(Scenario { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}
