use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// One result: named columns for json/csv plus a line for humans.
pub struct Record {
    pub fields: Vec<(&'static str, Value)>,
    pub pretty: String,
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

pub fn emit(format: Format, records: &[Record], out: &mut impl Write) -> std::io::Result<()> {
    match format {
        Format::Pretty => {
            for r in records {
                writeln!(out, "{}", r.pretty)?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| Value::Object(r.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()))
                .collect();
            let doc = if rows.len() == 1 { rows.into_iter().next().unwrap() } else { Value::Array(rows) };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.fields.iter().map(|(k, _)| *k))?;
            }
            for r in records {
                w.write_record(r.fields.iter().map(|(_, v)| csv_cell(v)))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
