use std::io::Write;

use serde_json::{json, Value};

use crate::Format;

/// Versioned JSON schema; bump on any incompatible field change.
pub const SCHEMA_VERSION: u32 = 1;

/// One command result in every supported rendering.
pub struct Rendered {
    pub command: &'static str,
    pub payload: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
}

pub fn emit(format: Format, r: Rendered) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let mut doc = json!({ "schema": SCHEMA_VERSION, "command": r.command });
            if let (Value::Object(doc), Value::Object(p)) = (&mut doc, r.payload) {
                doc.extend(p);
            }
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            if r.rows.is_empty() {
                return Ok(());
            }
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&r.header)?;
            for row in &r.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
        Format::Text => write!(out, "{}", r.text),
    }
}
