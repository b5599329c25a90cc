//! Pipeline configuration.
//!
//! Values come from defaults, an optional key-value text file, and the
//! `CURVECERT_PRECISION_CEILING` environment variable (bits), in that order.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const PRECISION_ENV_VAR: &str = "CURVECERT_PRECISION_CEILING";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// Surface genus, at least 2.
    pub genus: usize,
    /// Odd levels used for representation certificates, in search order.
    pub levels: Vec<u32>,
    /// Largest cover degree explored by the figure-eight cover search.
    pub max_cover_degree: usize,
    /// Interval precision at which geometric queries start.
    pub start_precision_bits: u32,
    /// Precision at which escalation gives up and flags the query.
    pub precision_ceiling_bits: u32,
    /// Cap on the tile-walk length per geodesic period before flagging.
    pub max_walk_tiles: usize,
    /// Dimension cap for the conjugation-operator certificate; larger
    /// representations report `unknown` with a budget note instead.
    pub ad_dimension_cap: usize,
    /// Word-length cap for the exhaustive proper-power fallback.
    pub proper_power_len_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            genus: 2,
            levels: vec![5, 7, 9, 11, 13],
            max_cover_degree: 8,
            start_precision_bits: 64,
            precision_ceiling_bits: 4096,
            max_walk_tiles: 4096,
            ad_dimension_cap: 420,
            proper_power_len_cap: 6,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad config line `{0}` (expected key=value)")]
    BadLine(String),
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {value}")]
    BadValue { key: String, value: String },
}

impl Config {
    /// Apply the precision-ceiling environment override if present.
    pub fn with_env(mut self) -> Self {
        if let Ok(v) = std::env::var(PRECISION_ENV_VAR) {
            if let Ok(bits) = v.trim().parse::<u32>() {
                self.precision_ceiling_bits = bits;
            }
        }
        self
    }

    /// Parse a key-value text file: one `key = value` per line, `#` comments.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Config::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::BadLine(line.into()))?;
            let key = key.trim();
            let value = value.trim();
            let bad = || ConfigError::BadValue {
                key: key.into(),
                value: value.into(),
            };
            match key {
                "genus" => self.genus = value.parse().map_err(|_| bad())?,
                "levels" => {
                    self.levels = value
                        .split(',')
                        .map(|s| s.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| bad())?;
                }
                "max_cover_degree" => self.max_cover_degree = value.parse().map_err(|_| bad())?,
                "start_precision_bits" => {
                    self.start_precision_bits = value.parse().map_err(|_| bad())?
                }
                "precision_ceiling_bits" => {
                    self.precision_ceiling_bits = value.parse().map_err(|_| bad())?
                }
                "max_walk_tiles" => self.max_walk_tiles = value.parse().map_err(|_| bad())?,
                "ad_dimension_cap" => self.ad_dimension_cap = value.parse().map_err(|_| bad())?,
                "proper_power_len_cap" => {
                    self.proper_power_len_cap = value.parse().map_err(|_| bad())?
                }
                other => return Err(ConfigError::UnknownKey(other.into())),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_key_value_text() {
        let mut cfg = Config::default();
        cfg.apply_text("genus = 3\nlevels = 5, 7\n# comment\nmax_cover_degree=4\n")
            .unwrap();
        assert_eq!(cfg.genus, 3);
        assert_eq!(cfg.levels, vec![5, 7]);
        assert_eq!(cfg.max_cover_degree, 4);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut cfg = Config::default();
        assert!(cfg.apply_text("volume = 11\n").is_err());
    }
}
