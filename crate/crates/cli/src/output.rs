//! Artifact writers. Every artifact starts with the resolved config; wall time is the only
//! field that differs between identical runs.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{Command, RunConfig};

pub const TOOL: &str = concat!("iwatsuka ", env!("CARGO_PKG_VERSION"));

/// Rows of a CSV table, already formatted.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Shortest round-trip formatting, so outputs are stable across platforms.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        String::new()
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<&Path>) -> io::Result<Self> {
        if let Some(dir) = dir {
            fs::create_dir_all(dir)?;
        }
        Ok(Self { dir: dir.map(Path::to_path_buf) })
    }

    pub fn is_stdout(&self) -> bool {
        self.dir.is_none()
    }

    fn emit(&self, name: &str, bytes: &[u8]) -> io::Result<()> {
        match &self.dir {
            Some(dir) => fs::write(dir.join(name), bytes),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(bytes)?;
                out.flush()
            }
        }
    }

    pub fn csv(&self, command: Command, config: &RunConfig, wall: f64, table: &Table) -> io::Result<()> {
        let mut buf = Vec::new();
        writeln!(buf, "# tool: {TOOL}")?;
        writeln!(buf, "# command: {}", command.name())?;
        writeln!(buf, "# config: {}", serde_json::to_string(config).map_err(io::Error::other)?)?;
        writeln!(buf, "# wall_time_s: {wall:.3}")?;
        {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        self.emit(&format!("{}.csv", command.name()), &buf)
    }

    /// `payload`'s fields with a `meta` block in front.
    pub fn json(&self, command: Command, config: &RunConfig, wall: f64, payload: &impl Serialize) -> io::Result<()> {
        let mut doc = Map::new();
        doc.insert("meta".into(), meta(command, config, wall));
        match serde_json::to_value(payload).map_err(io::Error::other)? {
            Value::Object(fields) => doc.extend(fields),
            other => {
                doc.insert("result".into(), other);
            }
        }
        self.named_json(&format!("{}.json", command.name()), &Value::Object(doc))
    }

    pub fn named_json(&self, name: &str, value: &Value) -> io::Result<()> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(io::Error::other)?;
        bytes.push(b'\n');
        self.emit(name, &bytes)
    }
}

pub fn meta(command: Command, config: &RunConfig, wall: f64) -> Value {
    json!({
        "tool": TOOL,
        "command": command.name(),
        "config": config,
        "wall_time_s": (wall * 1000.0).round() / 1000.0,
    })
}
