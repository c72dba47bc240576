use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Everything needed to reproduce a run: the command, its parameters and
/// the resolution overrides. Written next to every report.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Command path such as `"wave rbo"` or `"illposed scan"`.
    #[serde(default)]
    pub command: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default)]
    pub resolution: Resolution,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Resolution {
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
}

pub const RESOLUTION_KEYS: [&str; 3] = ["N", "M", "dt"];

#[derive(Debug)]
pub enum ConfigError {
    Unreadable(String),
    Malformed(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Unreadable(s) => write!(f, "cannot read config: {s}"),
            ConfigError::Malformed(s) => write!(f, "malformed config: {s}"),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Unreadable(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Malformed(e.to_string()))
    }

    /// Parameters with the resolution block folded in, ready to be
    /// deserialized into a command's argument struct.
    pub fn merged_params(&self) -> Map<String, Value> {
        let mut p = self.params.clone();
        if let Some(n) = self.resolution.n {
            p.insert("N".into(), n.into());
        }
        if let Some(m) = self.resolution.m {
            p.insert("M".into(), m.into());
        }
        if let Some(dt) = self.resolution.dt {
            p.insert("dt".into(), dt.into());
        }
        p
    }

    /// Applies flags given on the command line on top of this config.
    /// Resolution keys go to the resolution block.
    pub fn override_with(&mut self, cli: Map<String, Value>) -> Result<(), ConfigError> {
        for (k, v) in cli {
            match k.as_str() {
                "N" => self.resolution.n = Some(as_usize(&k, &v)?),
                "M" => self.resolution.m = Some(as_usize(&k, &v)?),
                "dt" => {
                    self.resolution.dt = Some(
                        v.as_f64()
                            .ok_or_else(|| ConfigError::Malformed(format!("dt = {v}")))?,
                    )
                }
                _ => {
                    self.params.insert(k, v);
                }
            }
        }
        Ok(())
    }

    /// Moves resolution keys found in `params` into the resolution block.
    pub fn normalize(&mut self) -> Result<(), ConfigError> {
        let found: Map<String, Value> = RESOLUTION_KEYS
            .iter()
            .filter_map(|k| self.params.remove(*k).map(|v| (k.to_string(), v)))
            .collect();
        self.override_with(found)
    }
}

fn as_usize(k: &str, v: &Value) -> Result<usize, ConfigError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| {
        ConfigError::Malformed(format!("{k} must be a non-negative integer, got {v}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_flags_override_the_file() {
        let mut c = RunConfig::parse(
            r#"{"command": "wave rbo", "params": {"c": 3.0, "L": 6.0}, "resolution": {"N": 128}}"#,
        )
        .unwrap();
        let mut cli = Map::new();
        cli.insert("c".into(), 4.0.into());
        cli.insert("N".into(), 256.into());
        c.override_with(cli).unwrap();
        let p = c.merged_params();
        assert_eq!(p["c"], 4.0);
        assert_eq!(p["L"], 6.0);
        assert_eq!(p["N"], 256);
    }

    #[test]
    fn unknown_fields_are_malformed() {
        assert!(matches!(
            RunConfig::parse(r#"{"command": "x", "bogus": 1}"#),
            Err(ConfigError::Malformed(_))
        ));
        assert!(RunConfig::parse("{").is_err());
    }

    #[test]
    fn resolution_keys_move_out_of_params() {
        let mut c = RunConfig::parse(r#"{"params": {"N": 64, "dt": 0.01}}"#).unwrap();
        c.normalize().unwrap();
        assert!(c.params.is_empty());
        assert_eq!(c.resolution.n, Some(64));
        assert_eq!(c.resolution.dt, Some(0.01));
    }
}
