//! Text form of a merge table.
//!
//! One record per line, `left,right,height,size`, LF line endings. The
//! `k`-th line creates node `n + k`, so `n` is the line count plus one.
//! Heights are written with 17 significant digits (`%.17g`), which round-trips
//! every `f64`.
//!
//! The parser also accepts ids and sizes written as integral floats
//! (`"3.0"`), as produced by tools that store the whole table as floats.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::dendrogram::{validate_dendrogram, Dendrogram, MergeRecord};
use crate::{Error, Result};

pub fn parse_merge_table(text: &str) -> Result<Dendrogram> {
    let mut merges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line,
                message: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let left = parse_count(fields[0], line, "left")?;
        let right = parse_count(fields[1], line, "right")?;
        let height = fields[2].parse::<f64>().map_err(|_| Error::Parse {
            line,
            message: format!("invalid height {:?}", fields[2]),
        })?;
        let size = parse_count(fields[3], line, "size")?;
        merges.push(MergeRecord::new(left, right, height, size));
    }
    let n = merges.len() + 1;
    validate_dendrogram(merges, n)
}

fn parse_count(field: &str, line: usize, what: &str) -> Result<usize> {
    if let Ok(v) = field.parse::<usize>() {
        return Ok(v);
    }
    match field.parse::<f64>() {
        Ok(v) if v >= 0.0 && libm::trunc(v) == v && v < 1e15 => Ok(v as usize),
        _ => Err(Error::Parse {
            line,
            message: format!("invalid {what} {field:?}"),
        }),
    }
}

pub fn serialize_merge_table(d: &Dendrogram) -> String {
    let mut out = String::new();
    for rec in d.merges() {
        // writing to a String cannot fail
        let _ = writeln!(
            out,
            "{},{},{},{}",
            rec.left,
            rec.right,
            format_g17(rec.height),
            rec.size
        );
    }
    out
}

/// Formats like C's `%.17g`.
pub fn format_g17(v: f64) -> String {
    const PRECISION: i32 = 17;
    if v == 0.0 {
        return if v.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').unwrap_or((&sci, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        strip_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
