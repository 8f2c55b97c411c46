//! File formats: numeric CSV tables, coordinate files and merge tables.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use bembed_core::datasets::LabeledData;
use bembed_core::merge_table::{parse_merge_table, serialize_merge_table};
use bembed_core::{DataMatrix, Dendrogram, Embedding};

use crate::error::{Error, Result};

const IRIS_CSV: &str = include_str!("../data/iris.csv");

/// Options for [`load_csv`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CsvOptions {
    pub has_header: bool,
    /// Column holding an integer class label. It is excluded from the data.
    pub label_column: Option<usize>,
}

pub fn load_csv(path: impl AsRef<Path>, opts: CsvOptions) -> Result<LabeledData> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, opts).map_err(|e| match e {
        Error::Csv { source, .. } => Error::Csv { path: path.to_path_buf(), source },
        other => other,
    })
}

pub fn read_csv<R: Read>(reader: R, opts: CsvOptions) -> Result<LabeledData> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(opts.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut width = None;
    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.map_err(|source| Error::Csv { path: Default::default(), source })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        let expected = *width.get_or_insert(rec.len());
        if rec.len() != expected {
            return Err(Error::RaggedRow { line, expected, found: rec.len() });
        }
        if let Some(lc) = opts.label_column {
            if lc >= expected {
                return Err(Error::Config(format!(
                    "label column {lc} out of range for {expected} columns"
                )));
            }
        }
        for (j, field) in rec.iter().enumerate() {
            if Some(j) == opts.label_column {
                labels.push(parse_label(field, line)?);
            } else {
                values.push(parse_real(field, line, j)?);
            }
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(Error::Parse { line: 0, message: "no data rows".into() });
    }
    let cols = values.len() / rows;
    let data = DataMatrix::new(rows, cols, values)?;
    let labels = opts.label_column.map(|_| labels);
    Ok(LabeledData::new(data, labels)?)
}

fn parse_real(field: &str, line: u64, col: usize) -> Result<f64> {
    match field.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse { line, message: format!("column {col}: invalid number {field:?}") }),
    }
}

fn parse_label(field: &str, line: u64) -> Result<i64> {
    if let Ok(v) = field.parse::<i64>() {
        return Ok(v);
    }
    match field.parse::<f64>() {
        Ok(v) if v.trunc() == v && v.abs() < 9e15 => Ok(v as i64),
        _ => Err(Error::Parse { line, message: format!("invalid label {field:?}") }),
    }
}

/// The classic 150-row iris measurements with species labels 0, 1, 2.
pub fn iris() -> LabeledData {
    read_csv(
        IRIS_CSV.as_bytes(),
        CsvOptions { has_header: true, label_column: Some(4) },
    )
    .expect("bundled iris table is well formed")
}

pub fn read_dendrogram(path: impl AsRef<Path>) -> Result<Dendrogram> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_merge_table(&text)?)
}

pub fn write_dendrogram(path: impl AsRef<Path>, d: &Dendrogram) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, serialize_merge_table(d)).map_err(|e| Error::io(path, e))
}

/// `id,x,y[,label]` with a header row.
pub fn coords_to_csv(coords: &Embedding, labels: Option<&[i64]>) -> String {
    let mut out = String::from(if labels.is_some() { "id,x,y,label\n" } else { "id,x,y\n" });
    for (i, p) in coords.coords().iter().enumerate() {
        match labels {
            Some(l) => out.push_str(&format!("{i},{},{},{}\n", p[0], p[1], l[i])),
            None => out.push_str(&format!("{i},{},{}\n", p[0], p[1])),
        }
    }
    out
}

pub fn write_coords(path: impl AsRef<Path>, coords: &Embedding, labels: Option<&[i64]>) -> Result<()> {
    write_text(path, &coords_to_csv(coords, labels))
}

/// Reads a coordinates file. Rows may come in any order but the ids must be
/// exactly `0..n`.
pub fn read_coords(path: impl AsRef<Path>) -> Result<(Embedding, Option<Vec<i64>>)> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_coords(file).map_err(|e| match e {
        Error::Csv { source, .. } => Error::Csv { path: path.to_path_buf(), source },
        other => other,
    })
}

pub fn parse_coords<R: Read>(reader: R) -> Result<(Embedding, Option<Vec<i64>>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows: Vec<(usize, [f64; 2], Option<i64>)> = Vec::new();
    let mut width = None;
    for rec in rdr.records() {
        let rec = rec.map_err(|source| Error::Csv { path: Default::default(), source })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rows.is_empty() && width.is_none() && rec.get(0) == Some("id") {
            width = Some(rec.len());
            continue;
        }
        let expected = *width.get_or_insert(rec.len());
        if rec.len() != expected {
            return Err(Error::RaggedRow { line, expected, found: rec.len() });
        }
        if !(3..=4).contains(&expected) {
            return Err(Error::Parse {
                line,
                message: format!("expected id,x,y[,label], found {expected} fields"),
            });
        }
        let id = rec[0]
            .parse::<usize>()
            .map_err(|_| Error::Parse { line, message: format!("invalid id {:?}", &rec[0]) })?;
        let p = [parse_real(&rec[1], line, 1)?, parse_real(&rec[2], line, 2)?];
        let label = if expected == 4 { Some(parse_label(&rec[3], line)?) } else { None };
        rows.push((id, p, label));
    }
    let n = rows.len();
    let mut coords = vec![None; n];
    let mut labels = vec![0; n];
    for (id, p, label) in rows {
        if id >= n || coords[id].is_some() {
            return Err(Error::Parse {
                line: 0,
                message: format!("ids must be 0..{n} without repeats (got {id})"),
            });
        }
        coords[id] = Some(p);
        if let Some(l) = label {
            labels[id] = l;
        }
    }
    let coords: Vec<_> = coords.into_iter().map(|p| p.expect("ids checked")).collect();
    let labels = (width == Some(4)).then_some(labels);
    Ok((Embedding::from_coords(coords), labels))
}

pub(crate) fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}
