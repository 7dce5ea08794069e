//! Run configuration: defaults, an optional TOML file and command-line
//! overrides, in that order.

use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Human,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Field descriptor such as `gf(3)` or `gf(2,2,w^2+w+1)`.
    pub field: String,
    /// Working precision for truncated input.
    pub prec: i64,
    /// Level n of B_n, D_n and Brauer classes.
    pub level: usize,
    /// Longest Witt vector accepted.
    pub witt_cap: usize,
    /// Trial multipliers are t^j with |j| <= trials.
    pub trials: i64,
    pub output: OutputMode,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            field: "gf(2)".into(),
            prec: 64,
            level: 1,
            witt_cap: 3,
            trials: 12,
            output: OutputMode::Human,
            seed: 0,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let c: Config = toml::from_str("field = \"gf(5)\"\noutput = \"json\"").unwrap();
        assert_eq!(c.field, "gf(5)");
        assert_eq!(c.output, OutputMode::Json);
        assert_eq!(c.prec, 64);
        assert!(toml::from_str::<Config>("colour = 1").is_err());
    }
}
