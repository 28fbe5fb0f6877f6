//! Fixed-format tables written as CSV or JSON.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// Significant digits for reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Four digits, matching the published tables.
    Table,
    /// Seventeen digits, enough to recover every `f64` exactly.
    Data,
}

impl Precision {
    pub fn digits(self) -> usize {
        match self {
            Precision::Table => 4,
            Precision::Data => 17,
        }
    }
}

/// Formats `x` with `sig` significant digits, in scientific notation when
/// `|x| < 1e-3` or `|x| >= 1e6`.
pub fn format_real(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if !(1e-3..1e6).contains(&a) {
        return format!("{:.*e}", sig - 1, x);
    }
    let exp = a.log10().floor() as i32;
    let decimals = |e: i32| (sig as i32 - 1 - e).max(0) as usize;
    let s = format!("{:.*}", decimals(exp), x);
    // Rounding can carry into a new leading digit, e.g. 9.9996 -> 10.000.
    let rounded: f64 = s.parse().unwrap_or(x);
    if rounded.abs() >= 10f64.powi(exp + 1) {
        if rounded.abs() >= 1e6 {
            return format!("{:.*e}", sig - 1, x);
        }
        return format!("{:.*}", decimals(exp + 1), x);
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self, precision: Precision) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format_real(*x, precision.digits()),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Real(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(i64::from(x))
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub precision: Precision,
}

impl Table {
    pub fn new(columns: &[&str], precision: Precision) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            precision,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let enc = |e: csv::Error| CliError::Encode(e.to_string());
        w.write_record(&self.columns).map_err(enc)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render(self.precision)))
                .map_err(enc)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Encode(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Encode(e.to_string()))
    }

    /// Array of objects keyed by column name; non-finite reals become `null`.
    pub fn to_json_value(&self) -> Value {
        let rows = self.rows.iter().map(|row| {
            let obj: Map<String, Value> = self
                .columns
                .iter()
                .cloned()
                .zip(row.iter().map(Cell::to_json))
                .collect();
            Value::Object(obj)
        });
        Value::Array(rows.collect())
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => json_string(&self.to_json_value()),
        }
    }
}

pub fn json_string<T: serde::Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Encode(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&std::path::Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_precision() {
        assert_eq!(format_real(1.7013016167040802, 4), "1.701");
        assert_eq!(format_real(20.0, 4), "20.00");
        assert_eq!(format_real(0.2, 4), "0.2000");
        assert_eq!(format_real(-4e-5, 4), "-4.000e-5");
        assert_eq!(format_real(-1.2649e-5, 4), "-1.265e-5");
        assert_eq!(format_real(9.99996, 4), "10.00");
        assert_eq!(format_real(999999.9, 4), "1.000e6");
        assert_eq!(format_real(1e6, 4), "1.000e6");
        assert_eq!(format_real(0.001, 4), "0.001000");
        assert_eq!(format_real(f64::NAN, 4), "NaN");
        assert_eq!(format_real(0.0, 4), "0");
    }

    #[test]
    fn data_precision_round_trips() {
        for x in [
            std::f64::consts::PI,
            -8.737752e-10,
            123456.78901234567,
            0.0012345678901234567,
            5e-324,
            1.0 / 3.0,
        ] {
            let s = format_real(x, 17);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_quotes_and_json_nulls() {
        let mut t = Table::new(&["name", "x"], Precision::Table);
        t.push(vec![Cell::Text("a, b".into()), Cell::Real(f64::NAN)]);
        assert_eq!(t.to_csv().unwrap(), "name,x\n\"a, b\",NaN\n");
        assert_eq!(
            t.to_json_value(),
            serde_json::json!([{"name": "a, b", "x": null}])
        );
    }
}
