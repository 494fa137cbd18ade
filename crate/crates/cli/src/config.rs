//! Run configuration: an optional TOML file, environment overrides for the
//! budgets, then command-line flags.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use s3quartic::construct::DEFAULT_COUNT_BOUND;
use s3quartic::poly::{EXT_CAP, SCAN_BOUND};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

/// Which evidence `construct` demands before printing a certificate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VerifyPolicy {
    /// Trace relation only; no enumeration.
    Trace,
    /// Enumerate whenever the count budget allows; required.
    Count,
    /// Trace relation, plus enumeration when the budget allows.
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Largest field size or prime range scanned by searches.
    pub scan_bound: u64,
    /// Largest `q^2` for which curves are enumerated.
    pub count_bound: u128,
    /// Largest extension degree for splitting fields.
    pub ext_cap: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            scan_bound: SCAN_BOUND,
            count_bound: DEFAULT_COUNT_BOUND,
            ext_cap: EXT_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub field: Option<String>,
    pub seed: u64,
    pub budgets: Budgets,
    pub format: Format,
    pub verify: VerifyPolicy,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BudgetsFile {
    scan_bound: Option<u64>,
    count_bound: Option<u64>,
    ext_cap: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    field: Option<String>,
    seed: Option<u64>,
    #[serde(default)]
    budgets: BudgetsFile,
    format: Option<Format>,
    verify: Option<VerifyPolicy>,
}

pub const ENV_SCAN_BOUND: &str = "S3Q_SCAN_BOUND";
pub const ENV_COUNT_BOUND: &str = "S3Q_COUNT_BOUND";
pub const ENV_EXT_CAP: &str = "S3Q_EXT_CAP";

fn env_number<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
    match std::env::var(name) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| anyhow::anyhow!("{name} is not a valid number: {s:?}")),
        Err(_) => Ok(None),
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).context("invalid config")?;
        let d = Config::default();
        Ok(Config {
            field: file.field,
            seed: file.seed.unwrap_or(d.seed),
            budgets: Budgets {
                scan_bound: file.budgets.scan_bound.unwrap_or(d.budgets.scan_bound),
                count_bound: file.budgets.count_bound.map_or(d.budgets.count_bound, u128::from),
                ext_cap: file.budgets.ext_cap.unwrap_or(d.budgets.ext_cap),
            },
            format: file.format.unwrap_or(d.format),
            verify: file.verify.unwrap_or(d.verify),
        })
    }

    /// Reads the file if given, then applies environment overrides.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("cannot read config {}", p.display()))?;
                Config::from_toml(&text)?
            }
            None => Config::default(),
        };
        if let Some(v) = env_number(ENV_SCAN_BOUND)? {
            cfg.budgets.scan_bound = v;
        }
        if let Some(v) = env_number(ENV_COUNT_BOUND)? {
            cfg.budgets.count_bound = v;
        }
        if let Some(v) = env_number(ENV_EXT_CAP)? {
            cfg.budgets.ext_cap = v;
        }
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        let b = &self.budgets;
        if b.scan_bound == 0 || b.count_bound == 0 || b.ext_cap == 0 {
            bail!("budgets must be positive");
        }
        if b.ext_cap > EXT_CAP {
            bail!("ext_cap is at most {EXT_CAP}");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let c = Config::from_toml(
            r#"
            field = "3^5"
            seed = 7
            format = "tsv"
            verify = "trace"
            [budgets]
            scan_bound = 1000
            count_bound = 4096
            ext_cap = 6
            "#,
        )
        .unwrap();
        assert_eq!(c.field.as_deref(), Some("3^5"));
        assert_eq!(c.seed, 7);
        assert_eq!(c.format, Format::Tsv);
        assert_eq!(c.verify, VerifyPolicy::Trace);
        assert_eq!(c.budgets.ext_cap, 6);
        c.check().unwrap();
    }

    #[test]
    fn partial_budgets_keep_defaults() {
        let c = Config::from_toml("[budgets]\ncount_bound = 10\n").unwrap();
        assert_eq!(c.budgets.count_bound, 10);
        assert_eq!(c.budgets.ext_cap, EXT_CAP);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(Config::from_toml("colour = 1").is_err());
        assert!(Config::from_toml("[budgets]\nwall_clock = 5").is_err());
    }

    #[test]
    fn rejects_zero_budget() {
        let c = Config::from_toml("[budgets]\nscan_bound = 0").unwrap();
        assert!(c.check().is_err());
    }
}
