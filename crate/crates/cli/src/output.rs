use std::io::Write;

use num_traits::One;
use serde_json::{json, Value};

use dp1_core::diagnostics::export::{sidecar_path, CsvTable, RunMetadata};
use dp1_core::numerics::format_rational;
use dp1_core::Rational;

use crate::config::{Format, OutputArgs};
use crate::CliError;

/// "3" for integers, "p/q" otherwise.
pub fn exact(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format_rational(q)
    }
}

fn table_json(table: &CsvTable) -> Value {
    json!({ "columns": table.header, "rows": table.rows })
}

fn write_text(text: &str, output: &OutputArgs) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Writes `table` as CSV (plus sidecar when writing to a file) or, with
/// `--format json`, one JSON document holding the metadata and the table.
pub fn emit(table: &CsvTable, meta: &RunMetadata, output: &OutputArgs) -> Result<(), CliError> {
    emit_with(table, meta, output, table_json(table))
}

/// Like [`emit`], with a custom JSON body for `--format json`.
pub fn emit_with(table: &CsvTable, meta: &RunMetadata, output: &OutputArgs, body: Value) -> Result<(), CliError> {
    match output.format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_to(&mut buf)?;
            match &output.out {
                Some(path) => {
                    std::fs::write(path, &buf)?;
                    meta.write_file(&sidecar_path(path))?;
                }
                None => std::io::stdout().lock().write_all(&buf)?,
            }
            Ok(())
        }
        Format::Json => {
            let doc = json!({ "metadata": meta, "data": body });
            let text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize") + "\n";
            write_text(&text, output)
        }
    }
}
