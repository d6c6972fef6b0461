//! Runtime configuration: defaults, config file, environment, flags (in
//! increasing precedence). The file format is `key = value` per line with
//! `#` comments; unknown keys are hard errors.

use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid {key}: {msg}")]
    Invalid { key: &'static str, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecisionMode {
    Binary64,
    /// decimal digits; >= 17
    Extended(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub precision: PrecisionMode,
    pub cache_dir: PathBuf,
    pub render_budget: u64,
    pub target_abs_err: f64,
    pub conv_tol: f64,
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: PrecisionMode::Binary64,
            cache_dir: PathBuf::from(".zetadyn"),
            render_budget: 8_000_000,
            target_abs_err: 1e-10,
            conv_tol: 1e-6,
            threads: None,
        }
    }
}

pub const CACHE_DIR_ENV: &str = "ZETADYN_CACHE_DIR";

impl Config {
    /// Defaults, overlaid by the optional config file, overlaid by the
    /// environment. Flag overrides happen at the CLI layer.
    pub fn load(file: Option<&Path>) -> Result<Config, ConfigError> {
        let mut cfg = Config::default();
        if let Some(path) = file {
            cfg.apply_file(path)?;
        }
        if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
            if !dir.is_empty() {
                cfg.cache_dir = PathBuf::from(dir);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let (key, value) = line.split_once('=').ok_or(ConfigError::Parse {
                line: lineno,
                msg: "expected key = value".into(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |msg: String| ConfigError::Parse { line: lineno, msg };
            match key {
                "precision" => {
                    self.precision = parse_precision(value)
                        .ok_or_else(|| bad(format!("bad precision '{value}'")))?;
                }
                "cache_dir" => self.cache_dir = PathBuf::from(value),
                "render_budget" => {
                    self.render_budget =
                        value.parse().map_err(|_| bad("bad render_budget".into()))?;
                }
                "target_abs_err" => {
                    self.target_abs_err =
                        value.parse().map_err(|_| bad("bad target_abs_err".into()))?;
                }
                "conv_tol" => {
                    self.conv_tol = value.parse().map_err(|_| bad("bad conv_tol".into()))?;
                }
                "threads" => {
                    self.threads =
                        Some(value.parse().map_err(|_| bad("bad threads".into()))?);
                }
                other => {
                    return Err(bad(format!("unknown key '{other}'")));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let PrecisionMode::Extended(d) = self.precision {
            if d < 17 {
                return Err(ConfigError::Invalid {
                    key: "precision",
                    msg: format!("extended mode needs >= 17 digits, got {d}"),
                });
            }
        }
        if self.render_budget == 0 {
            return Err(ConfigError::Invalid {
                key: "render_budget",
                msg: "must be positive".into(),
            });
        }
        if !(self.target_abs_err > 0.0) || !(self.conv_tol > 0.0) {
            return Err(ConfigError::Invalid {
                key: "tolerances",
                msg: "must be positive".into(),
            });
        }
        Ok(())
    }

    pub fn zero_cache_path(&self) -> PathBuf {
        self.cache_dir.join("zeros.csv")
    }
}

pub fn parse_precision(s: &str) -> Option<PrecisionMode> {
    if s == "binary64" {
        return Some(PrecisionMode::Binary64);
    }
    let rest = s.strip_prefix("extended:")?;
    rest.parse().ok().map(PrecisionMode::Extended)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_and_env_merge() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg");
        std::fs::write(
            &path,
            "# comment\nprecision = extended:40\nrender_budget = 1000\nconv_tol = 1e-7\n",
        )
        .unwrap();
        let cfg = Config::load(Some(&path)).unwrap();
        assert_eq!(cfg.precision, PrecisionMode::Extended(40));
        assert_eq!(cfg.render_budget, 1000);
        assert!((cfg.conv_tol - 1e-7).abs() < 1e-20);
    }

    #[test]
    fn unknown_key_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg");
        std::fs::write(&path, "nope = 1\n").unwrap();
        assert!(matches!(
            Config::load(Some(&path)),
            Err(ConfigError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn extended_digits_floor() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg");
        std::fs::write(&path, "precision = extended:10\n").unwrap();
        assert!(matches!(
            Config::load(Some(&path)),
            Err(ConfigError::Invalid { key: "precision", .. })
        ));
    }
}
