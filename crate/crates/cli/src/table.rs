//! Column tables written as CSV or as JSON arrays of objects.
//!
//! Every number goes through [`format_number`] first, so both formats carry
//! the same 12 significant digits and repeated runs are byte-identical.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::args::Format;
use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Empty,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) => json_number(*v),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

/// `%.12g`: fixed notation for decimal exponents in [−4, 12), scientific
/// otherwise, trailing zeros removed. Non-finite values become empty.
pub fn format_number(v: f64) -> String {
    if !v.is_finite() {
        return String::new();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The rounded value as a JSON number; null when not finite.
pub fn json_number(v: f64) -> Value {
    format_number(v)
        .parse::<f64>()
        .ok()
        .and_then(Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Run parameters, emitted alongside the rows in JSON only.
    pub meta: Vec<(String, Cell)>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: Cell) -> Self {
        self.meta.push((key.to_string(), value));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_field))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        for (k, v) in &self.meta {
            top.insert(k.clone(), v.to_json());
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::to_json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        top.insert("rows".to_string(), Value::Array(rows));
        Value::Object(top)
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                writeln!(out)?;
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(0.5199041628295785), "0.51990416283");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(-2.25), "-2.25");
        assert_eq!(format_number(123456789012.4), "123456789012");
        assert_eq!(format_number(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_number(1.5e-7), "1.5e-07");
        assert_eq!(format_number(0.0001), "0.0001");
        assert_eq!(format_number(f64::NAN), "");
        assert_eq!(format_number(0.0), "0");
    }

    #[test]
    fn rounding_carries_into_the_exponent() {
        assert_eq!(format_number(9.9999999999996), "10");
        assert_eq!(format_number(999999999999.7), "1e+12");
    }

    #[test]
    fn json_numbers_are_rounded() {
        assert_eq!(json_number(0.5199041628295785), Value::from(0.51990416283));
        assert_eq!(json_number(f64::INFINITY), Value::Null);
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["a", "b", "c"]);
        t.push(vec![Cell::Int(0), Cell::Num(0.5), Cell::Empty]);
        t.push(vec![Cell::Int(1), Cell::Text("odd".into()), Cell::Num(1e-20)]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b,c\n0,0.5,\n1,odd,1e-20\n");
    }

    #[test]
    fn json_keeps_column_order() {
        let mut t = Table::new(["z", "a"]).with_meta("r", Cell::Num(2.0));
        t.push(vec![Cell::Num(1.0), Cell::Empty]);
        let s = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(s, r#"{"r":2.0,"rows":[{"z":1.0,"a":null}]}"#);
    }
}
