use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Config;
use crate::Failure;

/// A CSV table built in memory and written in one go.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self {
            text: header.join(",") + "\n",
        }
    }

    /// `None` cells are left empty.
    pub fn row(&mut self, cells: &[Option<f64>]) {
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            if let Some(v) = c {
                let _ = write!(self.text, "{v:?}");
            }
        }
        self.text.push('\n');
    }

    pub fn write(&self, path: &Path) -> Result<(), Failure> {
        Ok(std::fs::write(path, &self.text)?)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(zfnet::Error::from)?;
    Ok(std::fs::write(path, text + "\n")?)
}

/// Writes `<command>.meta.json` next to the outputs: the resolved settings,
/// the worker count, any notes and command-specific results.
pub fn write_metadata(config: &Config, command: &str, notes: &[String], results: Value) -> Result<(), Failure> {
    let meta = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "threads": zfnet::threads(),
        "threads_env": "ZFNET_THREADS",
        "config": config,
        "notes": notes,
        "results": results,
    });
    write_json(&config.out.join(format!("{command}.meta.json")), &meta)
}
