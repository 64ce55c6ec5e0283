//! CSV reading and writing.
//!
//! Series files carry a header row; a single column loads as a
//! [`TimeSeries`], several columns as a [`ChannelSet`] named by the header.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::connectivity::{AssociationTable, ChannelSet, SquareMatrix};
use crate::dtw::TimeSeries;
use crate::error::{Result, WqaError};

#[derive(Debug, Clone, PartialEq)]
pub enum Loaded {
    Series(TimeSeries),
    Channels(ChannelSet),
}

/// Header plus raw string cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }
}

fn describe(path: &Path) -> String {
    path.display().to_string()
}

/// Reads a headed CSV, rejecting ragged rows. Line numbers in errors count
/// the header as line 1.
pub fn read_table(path: &Path) -> Result<Table> {
    let file = File::open(path).map_err(|e| WqaError::Io(format!("{}: {e}", describe(path))))?;
    read_table_from(file, &describe(path))
}

pub fn read_table_from<R: std::io::Read>(reader: R, source: &str) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = rdr
        .headers()
        .map_err(|e| WqaError::Parse(format!("{source}: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    if headers.is_empty() || headers.iter().all(String::is_empty) {
        return Err(WqaError::Parse(format!("{source}: missing header row")));
    }
    let mut rows = Vec::new();
    for (idx, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| match e.kind() {
            csv::ErrorKind::UnequalLengths { expected_len, len, .. } => WqaError::Parse(format!(
                "{source}: line {} has {len} fields, expected {expected_len}",
                idx + 2
            )),
            _ => WqaError::Parse(format!("{source}: {e}")),
        })?;
        rows.push(rec.iter().map(str::to_string).collect());
    }
    Ok(Table { headers, rows })
}

/// Parses every cell as a finite number, column-major.
pub fn numeric_columns(table: &Table, source: &str) -> Result<Vec<Vec<f64>>> {
    let mut cols = vec![Vec::with_capacity(table.rows.len()); table.headers.len()];
    for (r, row) in table.rows.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| {
                WqaError::Parse(format!(
                    "{source}: non-numeric cell '{cell}' at row {} (line {}), column '{}'",
                    r + 1,
                    r + 2,
                    table.headers[c]
                ))
            })?;
            if !v.is_finite() {
                return Err(WqaError::Parse(format!(
                    "{source}: non-finite value '{cell}' at row {} (line {}), column '{}'",
                    r + 1,
                    r + 2,
                    table.headers[c]
                )));
            }
            cols[c].push(v);
        }
    }
    Ok(cols)
}

pub fn load_timeseries_csv(path: &Path, sample_period: f64) -> Result<Loaded> {
    let file = File::open(path).map_err(|e| WqaError::Io(format!("{}: {e}", describe(path))))?;
    load_timeseries_from(file, &describe(path), sample_period)
}

pub fn load_timeseries_from<R: std::io::Read>(
    reader: R,
    source: &str,
    sample_period: f64,
) -> Result<Loaded> {
    let table = read_table_from(reader, source)?;
    if table.rows.is_empty() {
        return Err(WqaError::Parse(format!("{source}: no data rows")));
    }
    let mut cols = numeric_columns(&table, source)?;
    if cols.len() == 1 {
        Ok(Loaded::Series(TimeSeries::new(cols.remove(0), sample_period)?))
    } else {
        Ok(Loaded::Channels(ChannelSet::new(cols, sample_period, table.headers)?))
    }
}

/// Loads a file that must hold exactly one column.
pub fn load_series(path: &Path, sample_period: f64) -> Result<TimeSeries> {
    match load_timeseries_csv(path, sample_period)? {
        Loaded::Series(s) => Ok(s),
        Loaded::Channels(c) => Err(WqaError::InvalidInput(format!(
            "{}: expected a single column, found {}",
            describe(path),
            c.channel_count()
        ))),
    }
}

/// Loads a multichannel file (two or more columns).
pub fn load_channels(path: &Path, sample_period: f64) -> Result<ChannelSet> {
    match load_timeseries_csv(path, sample_period)? {
        Loaded::Channels(c) => Ok(c),
        Loaded::Series(_) => Err(WqaError::InvalidInput(format!(
            "{}: expected at least two channel columns",
            describe(path)
        ))),
    }
}

pub fn series_to_csv(ts: &TimeSeries) -> String {
    let mut out = String::from("value\n");
    for v in &ts.samples {
        out.push_str(&format!("{v}\n"));
    }
    out
}

/// Square matrix with channel names on the header row and first column.
pub fn matrix_to_csv(m: &SquareMatrix, names: &[String]) -> String {
    let mut out = String::from("channel");
    for n in names {
        out.push(',');
        out.push_str(n);
    }
    out.push('\n');
    for (i, n) in names.iter().enumerate() {
        out.push_str(n);
        for j in 0..m.size() {
            out.push_str(&format!(",{}", m.get(i, j)));
        }
        out.push('\n');
    }
    out
}

pub fn association_to_csv(table: &AssociationTable) -> String {
    let mut out = String::from("pair_a,pair_b,measure,beta,t,p,fdr_significant,sign\n");
    for r in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.pair_a, r.pair_b, r.measure, r.beta, r.t, r.p, r.fdr_significant, r.sign
        ));
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let mut f = File::create(path).map_err(|e| WqaError::Io(format!("{}: {e}", describe(path))))?;
    f.write_all(text.as_bytes())?;
    Ok(())
}
