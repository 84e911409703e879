//! `key = value` run configuration.
//!
//! Values come from, in decreasing priority: command-line flags, the file
//! named by `--config` or `$TERRACE_CONFIG`, and the built-in defaults.
//! Blank lines and lines starting with `#` are ignored.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use terrace_core::enumerate::{DEFAULT_DIRECTED_CAP, DEFAULT_SEARCH_CAP, DEFAULT_TERRACE_CAP};
use terrace_core::groups::DEFAULT_AUT_CAP;
use terrace_core::hillclimb::RestartPolicy;

pub const ENV_VAR: &str = "TERRACE_CONFIG";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub seeds: u64,
    pub max_steps: u64,
    pub max_restarts: u32,
    pub restart_policy: RestartPolicy,
    pub max_cuts: u8,
    pub terrace_cap: usize,
    pub directed_cap: usize,
    pub search_cap: usize,
    pub aut_cap: usize,
    pub max_nodes: Option<u64>,
    pub limit: usize,
    pub threads: usize,
    pub run_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            seeds: 1,
            max_steps: 1_000_000,
            max_restarts: 0,
            restart_policy: RestartPolicy::TeleportOnly,
            max_cuts: 2,
            terrace_cap: DEFAULT_TERRACE_CAP,
            directed_cap: DEFAULT_DIRECTED_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
            aut_cap: DEFAULT_AUT_CAP,
            max_nodes: None,
            limit: 100_000,
            threads: 0,
            run_dir: PathBuf::from("runs"),
        }
    }
}

fn parse_policy(v: &str) -> Result<RestartPolicy> {
    match v {
        "teleport-only" => Ok(RestartPolicy::TeleportOnly),
        "fresh-random" => Ok(RestartPolicy::FreshRandom),
        _ => bail!("restart_policy must be teleport-only or fresh-random, got {v:?}"),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || value.parse::<u64>().with_context(|| format!("{key}: expected an integer, got {value:?}"));
        match key {
            "seed" => self.seed = num()?,
            "seeds" => self.seeds = num()?,
            "max_steps" => self.max_steps = num()?,
            "max_restarts" => self.max_restarts = num()?.try_into()?,
            "restart_policy" => self.restart_policy = parse_policy(value)?,
            "max_cuts" => self.max_cuts = num()?.try_into()?,
            "terrace_cap" => self.terrace_cap = num()? as usize,
            "directed_cap" => self.directed_cap = num()? as usize,
            "search_cap" => self.search_cap = num()? as usize,
            "aut_cap" => self.aut_cap = num()? as usize,
            "max_nodes" => self.max_nodes = Some(num()?),
            "limit" => self.limit = num()? as usize,
            "threads" => self.threads = num()? as usize,
            "run_dir" => self.run_dir = PathBuf::from(value),
            _ => bail!("unknown config key {key:?}"),
        }
        Ok(())
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').with_context(|| format!("line {}: expected key = value", i + 1))?;
            self.set(k.trim(), v.trim()).with_context(|| format!("line {}", i + 1))?;
        }
        Ok(())
    }

    /// Defaults overlaid with the config file, if one is named.
    pub fn load(explicit: Option<&Path>) -> Result<(Self, Option<PathBuf>)> {
        let path = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from));
        let mut cfg = Self::default();
        if let Some(p) = &path {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
            cfg.apply_text(&text).with_context(|| format!("in config {}", p.display()))?;
        }
        Ok((cfg, path))
    }
}
