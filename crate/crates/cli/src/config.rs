//! Run configuration, read from a TOML file of `key = value` lines.

use std::path::Path;

use anyhow::{Context as _, Result};
use klein168::groebner::DEFAULT_PRIMES;
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Working conductor for hexagon systems.
    pub conductor: u32,
    /// Primes for Gröbner certificates.
    pub primes: Vec<u64>,
    /// Genus bound for the Riemann-Hurwitz enumeration.
    pub rh_gmax: u32,
    /// Largest degree for invariant dimension tables.
    pub max_degree: u32,
    /// Check ids to run; empty means all.
    pub checks: Vec<String>,
    /// Seed for randomized spot checks.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            conductor: 28,
            primes: DEFAULT_PRIMES.to_vec(),
            rh_gmax: 30,
            max_degree: 8,
            checks: Vec::new(),
            seed: 0,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).context("invalid config")?;
        if cfg.primes.is_empty() {
            anyhow::bail!("config lists no primes");
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        assert_eq!(Config::parse("").unwrap(), Config::default());
        let c = Config::parse("primes = [101]\nseed = 7\n").unwrap();
        assert_eq!(c.primes, vec![101]);
        assert_eq!(c.seed, 7);
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("primes = []").is_err());
    }
}
