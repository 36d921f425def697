//! Table emission: CSV with `# key=value` metadata comments, or a JSON
//! mirror with `meta` and `rows` members.
//!
//! Every float is printed with 17 significant digits so re-parsing
//! reproduces the exact double; lines end with LF.

use crate::config::OutputFormat;
use anyhow::{Context, Result};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

#[derive(Clone, Copy, Debug)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
        }
    }
}

#[derive(Debug, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn push_meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn push_float_meta(&mut self, key: &str, value: f64) {
        self.push_meta(key, format!("{value:.16e}"));
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> Result<()> {
        for (key, value) in &self.meta {
            writeln!(w, "# {key}={value}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut dyn Write) -> Result<()> {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::from(v.clone())))
            .collect();
        let value = serde_json::json!({
            "meta": meta,
            "columns": self.columns,
            "rows": self.rows.iter()
                .map(|row| row.iter().map(Cell::json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        });
        serde_json::to_writer_pretty(&mut *w, &value)?;
        writeln!(w)?;
        Ok(())
    }

    pub fn write(&self, format: OutputFormat, out: Option<&Path>) -> Result<()> {
        match out {
            Some(path) => {
                let file = File::create(path)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                let mut w = BufWriter::new(file);
                self.dispatch(format, &mut w)?;
                w.flush()?;
            }
            None => {
                let stdout = std::io::stdout();
                let mut w = stdout.lock();
                self.dispatch(format, &mut w)?;
            }
        }
        Ok(())
    }

    fn dispatch(&self, format: OutputFormat, w: &mut dyn Write) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(w),
            OutputFormat::Json => self.write_json(w),
        }
    }
}
