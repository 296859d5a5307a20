//! Lazily computed objects shared between checks and subcommands.

use std::sync::OnceLock;

use anyhow::{anyhow, Result};
use klein168::characters::{build_psl_table, build_sl_table, PslTable, SlTable};
use klein168::data;
use klein168::geometry::{special_orbits_p3, OrbitRecord, SpecialOrbits};

use crate::config::Config;

pub struct Context {
    pub config: Config,
    sl: OnceLock<std::result::Result<SlTable, String>>,
    orbits: OnceLock<std::result::Result<SpecialOrbits, String>>,
}

impl Context {
    pub fn new(config: Config) -> Self {
        Context { config, sl: OnceLock::new(), orbits: OnceLock::new() }
    }

    /// Character table of the order-336 group, containing the order-168
    /// table built on the plane group.
    pub fn sl_table(&self) -> Result<&SlTable> {
        self.sl
            .get_or_init(|| {
                let psl = build_psl_table(data::psl27_p2()).map_err(|e| e.to_string())?;
                build_sl_table(data::sl27(), data::sl27_projectivization(), psl).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| anyhow!("{e}"))
    }

    pub fn psl_table(&self) -> Result<&PslTable> {
        Ok(&self.sl_table()?.psl)
    }

    pub fn special_orbits(&self) -> Result<&SpecialOrbits> {
        self.orbits
            .get_or_init(|| {
                special_orbits_p3(data::sl27(), data::sl27_projectivization()).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| anyhow!("{e}"))
    }

    pub fn orbit(&self, name: &str) -> Result<&OrbitRecord> {
        let o = self.special_orbits()?;
        Ok(match name {
            "sigma8" => &o.sigma8,
            "sigma24" => &o.sigma24,
            "sigma28" => &o.sigma28,
            "sigma28p" => &o.sigma28p,
            _ => anyhow::bail!("unknown orbit {name}; expected sigma8, sigma24, sigma28 or sigma28p"),
        })
    }
}
