use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::CliError;

/// 17 significant digits, enough to round-trip any double.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match out {
        Some(p) => std::fs::File::create(p)
            .map(|f| Box::new(std::io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

pub fn write_csv(out: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink(out)?);
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.write_record(r).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// `{params, checks, results}` in that order.
pub fn write_json(out: Option<&Path>, params: Value, checks: Value, results: Value) -> Result<(), CliError> {
    let mut doc = serde_json::Map::new();
    doc.insert("params".into(), params);
    doc.insert("checks".into(), checks);
    doc.insert("results".into(), results);
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, &Value::Object(doc)).map_err(io_err)?;
    w.write_all(b"\n").map_err(io_err)?;
    w.flush().map_err(io_err)
}
