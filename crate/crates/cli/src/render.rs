//! JSON and CSV encodings of a [`Report`].
//!
//! CSV has one header row and one row per result record. Floats are written
//! with 17 significant digits; nested values become compact JSON cells.

use serde_json::{Map, Number, Value};

use crate::{Format, Report, Results, RunError};

pub fn render(report: &Report, format: Format) -> Result<String, RunError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| RunError::Encode(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(report),
    }
}

/// `x` with 17 significant digits.
pub fn float_cell(x: f64) -> String {
    format!("{x:.16e}")
}

fn number_cell(n: &Number) -> String {
    if n.is_f64() {
        float_cell(n.as_f64().expect("f64 number"))
    } else {
        n.to_string()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => number_cell(n),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn records(report: &Report) -> Result<Vec<Map<String, Value>>, RunError> {
    let to_map = |v: Value| match v {
        Value::Object(m) => Ok(m),
        _ => Err(RunError::Encode("result record is not an object".into())),
    };
    let enc = |e: serde_json::Error| RunError::Encode(e.to_string());
    match &report.results {
        Results::Analyze(s) => Ok(vec![to_map(serde_json::to_value(s).map_err(enc)?)?]),
        Results::Verify(v) => v.iter().map(|x| to_map(serde_json::to_value(x).map_err(enc)?)).collect(),
        Results::Catalog(m) => m.iter().map(|x| to_map(serde_json::to_value(x).map_err(enc)?)).collect(),
    }
}

fn render_csv(report: &Report) -> Result<String, RunError> {
    let rows = records(report)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let enc = |e: csv::Error| RunError::Encode(e.to_string());
    if let Some(first) = rows.first() {
        w.write_record(first.keys()).map_err(enc)?;
    }
    for row in &rows {
        w.write_record(row.values().map(cell)).map_err(enc)?;
    }
    let bytes = w.into_inner().map_err(|e| RunError::Encode(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| RunError::Encode(e.to_string()))
}
