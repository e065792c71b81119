//! CSV tables with numeric cells and string sentinels.

use std::io;
use std::path::Path;

use moloconv_core::sweep::MetricValue;

use crate::error::{CliError, Result};
use crate::format;

pub const UNSTABLE: &str = "unstable";
pub const POLE: &str = "pole";
pub const UNDEFINED: &str = "undefined";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    /// Non-finite values render as `undefined`.
    Num(f64),
    Text(&'static str),
    Bool(bool),
}

impl Cell {
    pub fn render(&self) -> String {
        match *self {
            Cell::Num(x) if x.is_finite() => format::num(x),
            Cell::Num(_) => UNDEFINED.into(),
            Cell::Text(s) => s.into(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<MetricValue> for Cell {
    fn from(v: MetricValue) -> Self {
        match v {
            MetricValue::Number(x) => Cell::Num(x),
            MetricValue::Unstable => Cell::Text(UNSTABLE),
            MetricValue::Pole => Cell::Text(POLE),
            MetricValue::Undefined => Cell::Text(UNDEFINED),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn write<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::render))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        self.write(io::BufWriter::new(file))
            .map_err(|source| CliError::Csv { path: path.into(), source })
    }
}
