use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use super::args::Format;
use crate::error::Result;

pub const UNITS: &str =
    "energies in E_rec = hbar^2 k^2 / 2M relative to N hbar Omega; momenta in hbar k; eta = k z";

/// Resolved parameters of one run, embedded in every output.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub alpha: f64,
    #[serde(rename = "N")]
    pub n_excitations: usize,
    pub zeta: f64,
    #[serde(rename = "Delta")]
    pub delta: f64,
    #[serde(rename = "Omega")]
    pub omega: f64,
    pub xi: Option<f64>,
    pub n_max: usize,
    /// Command-specific settings (sorted keys).
    pub options: Value,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj = self.header.iter().zip(r).map(|(k, v)| (k.to_string(), cell_json(v))).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

fn cell_json(v: &str) -> Value {
    if v.is_empty() {
        return Value::Null;
    }
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => json!(x),
        _ => Value::String(v.to_string()),
    }
}

/// Shortest representation that parses back to the same value, with an
/// exponent for very small or large magnitudes.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `bands.csv` -> `bands.edges.csv`.
pub fn sidecar(path: &Path, tag: &str, ext: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}

pub fn write_header(w: &mut dyn Write, config: &RunConfig, notes: &[(&str, String)]) -> Result<()> {
    writeln!(w, "# jc-freespace {}", config.command)?;
    writeln!(w, "# units: {UNITS}")?;
    writeln!(w, "# config: {}", serde_json::to_string(config)?)?;
    for (k, v) in notes {
        writeln!(w, "# {k}: {v}")?;
    }
    Ok(())
}

pub fn write_csv_table(w: &mut dyn Write, table: &Table) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(&table.header)?;
    for row in &table.rows {
        csv.write_record(row)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_csv(w: &mut dyn Write, config: &RunConfig, notes: &[(&str, String)], table: &Table) -> Result<()> {
    write_header(w, config, notes)?;
    write_csv_table(w, table)
}

pub fn json_document(config: &RunConfig, data: Value) -> Value {
    json!({ "command": config.command, "units": UNITS, "config": config, "data": data })
}

pub fn write_json(w: &mut dyn Write, doc: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, doc)?;
    writeln!(w)?;
    Ok(())
}

/// Writes one table in the requested format, with extra JSON fields merged
/// into `data`.
pub fn emit(
    path: Option<&Path>,
    format: Format,
    config: &RunConfig,
    notes: &[(&str, String)],
    table: &Table,
    extra: Value,
) -> Result<()> {
    let mut w = open(path)?;
    match format {
        Format::Csv => write_csv(&mut *w, config, notes, table)?,
        Format::Json => {
            let mut data = json!({ "rows": table.to_json() });
            if let (Value::Object(d), Value::Object(e)) = (&mut data, extra) {
                d.extend(e);
            }
            for (k, v) in notes {
                data[*k] = cell_json(v);
            }
            write_json(&mut *w, &json_document(config, data))?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn table_json(table: &Table) -> Value {
    table.to_json()
}
