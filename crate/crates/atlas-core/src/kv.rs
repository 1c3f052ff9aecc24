//! Plain-text `key = value` configuration files.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Lists are comma-separated. All run manifests, run configurations, and
//! synthetic-cohort configurations use this format.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{AtlasError, Result};

/// Parsed key-value file. Keys are unique; re-assignment is an error.
#[derive(Debug, Clone)]
pub struct KvFile {
    path: String,
    entries: BTreeMap<String, String>,
}

impl KvFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| AtlasError::io(path.display().to_string(), e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, path: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                AtlasError::config(path, format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(AtlasError::config(
                    path,
                    format!("line {}: empty key", lineno + 1),
                ));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(AtlasError::config(
                    path,
                    format!("line {}: key `{}` assigned twice", lineno + 1, key),
                ));
            }
        }
        Ok(KvFile {
            path: path.to_string(),
            entries,
        })
    }

    pub fn path(&self) -> &str {
        &self.path
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|k| k.as_str())
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|v| v.as_str())
    }

    fn required(&self, key: &str) -> Result<&str> {
        self.raw(key)
            .ok_or_else(|| AtlasError::config(&self.path, format!("missing key `{key}`")))
    }

    fn parse_value<T: std::str::FromStr>(&self, key: &str, value: &str) -> Result<T> {
        value.parse::<T>().map_err(|_| {
            AtlasError::config(
                &self.path,
                format!(
                    "key `{key}`: cannot parse `{value}` as {}",
                    std::any::type_name::<T>()
                ),
            )
        })
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let value = self.required(key)?;
        self.parse_value(key, value)
    }

    pub fn get_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.raw(key) {
            Some(value) => self.parse_value(key, value),
            None => Ok(default),
        }
    }

    pub fn get_opt<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            Some(value) => Ok(Some(self.parse_value(key, value)?)),
            None => Ok(None),
        }
    }

    pub fn get_string(&self, key: &str) -> Result<String> {
        Ok(self.required(key)?.to_string())
    }

    pub fn get_string_or(&self, key: &str, default: &str) -> String {
        self.raw(key).unwrap_or(default).to_string()
    }

    /// Comma-separated list of parseable values; empty value -> empty list.
    pub fn get_list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>> {
        let value = self.required(key)?;
        if value.is_empty() {
            return Ok(Vec::new());
        }
        value
            .split(',')
            .map(|item| self.parse_value(key, item.trim()))
            .collect()
    }

    pub fn get_list_or<T: std::str::FromStr>(&self, key: &str, default: Vec<T>) -> Result<Vec<T>> {
        match self.raw(key) {
            Some(_) => self.get_list(key),
            None => Ok(default),
        }
    }
}
