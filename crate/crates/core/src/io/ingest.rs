use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::data::Dataset;
use crate::error::{Error, Result};

/// A dataset read from a CSV file together with its header names.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvDataset {
    pub data: Dataset,
    pub predictors: Vec<String>,
    pub response: String,
}

/// Reads a CSV file with one header row, numeric cells and the response in
/// the last column.
pub fn ingest_csv(path: impl AsRef<Path>) -> Result<CsvDataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, &path.display().to_string())
}

/// Like [`ingest_csv`] over any reader; `label` names the source in errors.
pub fn read_csv<R: Read>(reader: R, label: &str) -> Result<CsvDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(label, e))?.clone();
    let width = headers.len();
    if width == 0 || (width == 1 && headers[0].is_empty()) {
        return Err(Error::EmptyDataset { path: label.into() });
    }
    if width < 2 {
        return Err(Error::Parse {
            path: label.into(),
            line: 1,
            column: 1,
            message: "need at least one predictor column and a response column".into(),
        });
    }
    let mut rows = Vec::new();
    let mut y = Vec::new();
    let mut record = csv::StringRecord::new();
    loop {
        match rdr.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => return Err(csv_error(label, e)),
        }
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != width {
            return Err(Error::RaggedRow {
                path: label.into(),
                line,
                found: record.len(),
                expected: width,
            });
        }
        let mut values = Vec::with_capacity(width);
        for (j, cell) in record.iter().enumerate() {
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                _ => {
                    return Err(Error::Parse {
                        path: label.into(),
                        line,
                        column: j + 1,
                        message: format!("`{}` is not a finite number", cell.escape_debug()),
                    })
                }
            }
        }
        y.push(values.pop().unwrap_or_default());
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset { path: label.into() });
    }
    let mut names: Vec<String> = headers.iter().map(str::to_owned).collect();
    let response = names.pop().unwrap_or_default();
    Ok(CsvDataset {
        data: Dataset::from_rows(&rows, y)?,
        predictors: names,
        response,
    })
}

fn csv_error(label: &str, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    let column = match e.kind() {
        csv::ErrorKind::Utf8 { err, .. } => err.field() + 1,
        _ => 0,
    };
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::io(label, source),
        kind => Error::Parse {
            path: label.into(),
            line,
            column,
            message: csv_kind_message(&kind),
        },
    }
}

fn csv_kind_message(kind: &csv::ErrorKind) -> String {
    match kind {
        csv::ErrorKind::Utf8 { err, .. } => format!("invalid UTF-8: {err}"),
        other => format!("{other:?}"),
    }
}
