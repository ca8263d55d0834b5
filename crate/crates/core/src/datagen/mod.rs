//! Dataset ingestion and generators for the synthetic, user-study and
//! billiard datasets.

pub mod billiard;
pub mod quadrature;
pub mod study;

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::Dataset;

pub use billiard::{gen_billiard, BilliardConfig, BilliardMetadata, BilliardRun};
pub use study::{gen_study_dataset, StudyDatasetSpec, StudyKind, StudyMetadata};

/// Label column picked up automatically when none is named.
pub const DEFAULT_LABEL_COLUMN: &str = "class";

/// Loads a comma-separated dataset from disk. See [`parse_csv`].
pub fn load_csv(path: impl AsRef<Path>, label_column: Option<&str>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text, label_column, &path.display().to_string())
}

/// Parses a dataset. A first row containing any non-numeric cell is a
/// header. The label column is `label_column` if given (a header is then
/// required), otherwise a column named `class` when present. All other
/// columns become components in column order. Errors name the 1-based
/// file line.
pub fn parse_csv(text: &str, label_column: Option<&str>, origin: &str) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Csv {
            path: origin.to_string(),
            row: i + 1,
            message: e.to_string(),
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push((i + 1, rec));
    }
    if records.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let has_header = records[0].1.iter().any(|c| c.parse::<f64>().is_err());
    let header: Option<Vec<String>> =
        has_header.then(|| records[0].1.iter().map(str::to_string).collect());
    let body = if has_header {
        &records[1..]
    } else {
        &records[..]
    };
    let width = header
        .as_ref()
        .map_or_else(|| body.first().map_or(0, |r| r.1.len()), Vec::len);

    let label_idx = match (label_column, &header) {
        (Some(name), Some(h)) => Some(
            h.iter()
                .position(|c| c == name)
                .ok_or_else(|| Error::MissingLabelColumn(name.to_string()))?,
        ),
        (Some(name), None) => return Err(Error::MissingLabelColumn(name.to_string())),
        (None, Some(h)) => h.iter().position(|c| c == DEFAULT_LABEL_COLUMN),
        (None, None) => None,
    };

    let mut rows = Vec::with_capacity(body.len());
    let mut labels = label_idx.map(|_| Vec::with_capacity(body.len()));
    for (line, rec) in body {
        if rec.len() != width {
            return Err(Error::Csv {
                path: origin.to_string(),
                row: *line,
                message: format!("ragged row: expected {width} cells, found {}", rec.len()),
            });
        }
        let mut comps = Vec::with_capacity(width);
        for (col, cell) in rec.iter().enumerate() {
            if Some(col) == label_idx {
                labels
                    .as_mut()
                    .expect("label column")
                    .push(cell.to_string());
                continue;
            }
            let v = cell.parse::<f64>().map_err(|_| Error::Csv {
                path: origin.to_string(),
                row: *line,
                message: format!("non-numeric value '{cell}' in column {}", col + 1),
            })?;
            comps.push(v);
        }
        rows.push(comps);
    }
    let names = header.map(|h| {
        h.into_iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != label_idx)
            .map(|(_, n)| n)
            .collect()
    });
    Dataset::from_rows(rows, labels, names)
}

/// Writes a dataset in the format [`parse_csv`] reads: a header row, then
/// one row per vector, with labels (if any) in a trailing `class` column.
pub fn write_csv(ds: &Dataset, mut out: impl Write) -> std::io::Result<()> {
    let n = ds.dimension();
    let mut header: Vec<String> = match &ds.attribute_names {
        Some(names) => names.clone(),
        None => (0..n).map(|i| format!("d{i}")).collect(),
    };
    if ds.labels.is_some() {
        header.push(DEFAULT_LABEL_COLUMN.to_string());
    }
    writeln!(out, "{}", header.join(","))?;
    for (i, v) in ds.vectors.iter().enumerate() {
        let mut cells: Vec<String> = v.components().iter().map(|c| format!("{c:?}")).collect();
        if let Some(labels) = &ds.labels {
            cells.push(labels[i].clone());
        }
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn to_csv_string(ds: &Dataset) -> String {
    let mut buf = Vec::new();
    write_csv(ds, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("utf-8")
}

/// The two six-dimensional example vectors: an ascending run and its
/// reversal shifted down by one.
pub fn gen_teaser() -> Dataset {
    let orange = vec![5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
    let cyan: Vec<f64> = orange.iter().rev().map(|v| v - 1.0).collect();
    Dataset::from_rows(
        vec![orange, cyan],
        Some(vec!["orange".into(), "cyan".into()]),
        Some((0..6).map(|i| format!("d{i}")).collect()),
    )
    .expect("teaser data is valid")
}
