use std::path::Path;

use qlattice::arith::{parse_rational, rat, Rational};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

/// Candidate orders for the certificate dovetail. Only the weight order
/// exists: candidates are grouped by total weight, then direction weight,
/// then radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DovetailOrder {
    Weight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub default_fuel: u64,
    pub default_precision: Rational,
    pub output_format: OutputFormat,
    pub dovetail_seed_order: DovetailOrder,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            default_fuel: 20,
            default_precision: rat(1, 1 << 20),
            output_format: OutputFormat::Json,
            dovetail_seed_order: DovetailOrder::Weight,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    default_fuel: Option<u64>,
    default_precision: Option<String>,
    output_format: Option<OutputFormat>,
    dovetail_seed_order: Option<DovetailOrder>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Parse(format!("config: {e}")))?;
        let mut cfg = Config::default();
        if let Some(f) = raw.default_fuel {
            if f == 0 {
                return Err(CliError::Domain("config: default_fuel must be at least 1".into()));
            }
            cfg.default_fuel = f;
        }
        if let Some(p) = raw.default_precision {
            let p = parse_rational(&p)?;
            if p <= Rational::from_integer(0.into()) {
                return Err(CliError::Domain("config: default_precision must be positive".into()));
            }
            cfg.default_precision = p;
        }
        if let Some(o) = raw.output_format {
            cfg.output_format = o;
        }
        if let Some(d) = raw.dovetail_seed_order {
            cfg.dovetail_seed_order = d;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// From the file named by `QLATTICE_CONFIG`, or the defaults.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os("QLATTICE_CONFIG") {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let cfg = Config::from_toml("").unwrap();
        assert_eq!(cfg, Config::default());
        let cfg = Config::from_toml(
            "default_fuel = 7\ndefault_precision = \"1/1000\"\noutput_format = \"text\"\ndovetail_seed_order = \"weight\"\n",
        )
        .unwrap();
        assert_eq!(cfg.default_fuel, 7);
        assert_eq!(cfg.default_precision, rat(1, 1000));
        assert_eq!(cfg.output_format, OutputFormat::Text);
    }

    #[test]
    fn bad_configs() {
        assert!(matches!(Config::from_toml("default_fuel = 0"), Err(CliError::Domain(_))));
        assert!(matches!(Config::from_toml("default_precision = \"-1\""), Err(CliError::Domain(_))));
        assert!(matches!(Config::from_toml("colour = 1"), Err(CliError::Parse(_))));
        assert!(matches!(Config::from_toml("dovetail_seed_order = \"spiral\""), Err(CliError::Parse(_))));
    }
}
