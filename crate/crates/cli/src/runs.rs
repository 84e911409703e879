//! Run directory: one JSON file per invocation plus `index.jsonl`.
//!
//! The per-run file holds only replayable content (command line, effective
//! config, version, result), so re-running the same command rewrites the
//! same bytes. Wall-clock data goes into the index line only.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;

pub const VERSION: &str = concat!("terrace ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Serialize)]
pub struct Record<'a> {
    pub version: &'static str,
    pub command: &'a str,
    pub argv: &'a [String],
    pub config: &'a RunConfig,
    pub result: Value,
}

pub fn record_json(record: &Record) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("records serialise");
    s.push('\n');
    s
}

/// Writes the record and appends an index line; returns the record path.
pub fn save(dir: &Path, record: &Record, started: SystemTime, elapsed: Duration, exit_code: u8) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating run directory {}", dir.display()))?;
    let since_epoch = started.duration_since(UNIX_EPOCH).unwrap_or_default();
    let stem = format!("{}-{:09}-{}", since_epoch.as_secs(), since_epoch.subsec_nanos(), record.command);
    let mut path = dir.join(format!("{stem}.json"));
    let mut n = 1;
    while path.exists() {
        path = dir.join(format!("{stem}-{n}.json"));
        n += 1;
    }
    fs::write(&path, record_json(record)).with_context(|| format!("writing {}", path.display()))?;

    let line = json!({
        "file": path.file_name().map(|f| f.to_string_lossy().into_owned()),
        "command": record.command,
        "started_unix": since_epoch.as_secs_f64(),
        "seconds": elapsed.as_secs_f64(),
        "exit_code": exit_code,
    });
    let mut index =
        OpenOptions::new().create(true).append(true).open(dir.join("index.jsonl")).context("opening index.jsonl")?;
    writeln!(index, "{line}")?;
    Ok(path)
}
