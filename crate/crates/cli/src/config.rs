//! Parameter resolution: command-line flags, then a `key=value` file, then
//! built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", no + 1)))?;
            let key = k.trim().trim_start_matches("--").replace('_', "-");
            values.insert(key, v.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| CliError::usage(format!("config key `{key}`: cannot parse `{s}`"))),
        }
    }
}

/// Resolved value of one parameter.
pub fn resolve<T: FromStr>(file: &FileConfig, key: &str, flag: Option<T>, default: T) -> Result<T, CliError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    Ok(file.get(key)?.unwrap_or(default))
}

pub fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("--{key} must be positive and finite, got {v}")))
    }
}

pub fn finite(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("--{key} must be finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_prefixes() {
        let f = FileConfig::parse("# c\nhbar = 0.5\n--m=2 # mass\n\nc_min=-1\n").unwrap();
        assert_eq!(f.get::<f64>("hbar").unwrap(), Some(0.5));
        assert_eq!(f.get::<f64>("m").unwrap(), Some(2.0));
        assert_eq!(f.get::<f64>("c-min").unwrap(), Some(-1.0));
        assert!(FileConfig::parse("novalue").is_err());
        assert!(f.get::<usize>("hbar").is_err());
    }

    #[test]
    fn precedence() {
        let f = FileConfig::parse("k=3").unwrap();
        assert_eq!(resolve(&f, "k", Some(5.0), 1.0).unwrap(), 5.0);
        assert_eq!(resolve(&f, "k", None, 1.0).unwrap(), 3.0);
        assert_eq!(resolve(&f, "m", None, 1.0).unwrap(), 1.0);
    }
}
