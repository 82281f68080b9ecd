use deligne::{Error, Result};
use serde::Serialize;

use crate::Format;

/// Renders records: one line each as text, one flat row each as CSV, or a
/// JSON array of the full records.
pub fn records<'a, T, F>(format: Format, records: &'a [T], text: impl Fn(&T) -> String, flat: impl Fn(&'a T) -> F) -> Result<String>
where
    T: Serialize,
    F: Serialize,
{
    match format {
        Format::Text => Ok(records.iter().map(|r| text(r) + "\n").collect()),
        Format::Json => json(records),
        Format::Csv => csv(records.iter().map(flat)),
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv<F: Serialize>(rows: impl Iterator<Item = F>) -> Result<String> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
