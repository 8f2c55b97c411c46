//! Observation matrices and pairwise dissimilarities.

use alloc::vec::Vec;

use crate::condensed::CondensedMatrix;
use crate::{Error, Result};

/// Row-major `rows x cols` matrix of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl DataMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows < 2 || cols < 1 || values.len() != rows * cols {
            return Err(Error::Shape { rows, cols });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { rows, cols, values })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.as_ref().len() != cols {
                return Err(Error::Shape {
                    rows: rows.len(),
                    cols,
                });
            }
            values.extend_from_slice(r.as_ref());
        }
        Self::new(rows.len(), cols, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.cols)
    }

    /// Reorders rows so that row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut values = Vec::with_capacity(self.values.len());
        for &p in perm {
            values.extend_from_slice(self.row(p));
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            values,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DissimilarityKind {
    Euclidean,
    /// `1 - pearson(row_i, row_j)`, in `[0, 2]`. Not a metric.
    Correlation,
}

impl DissimilarityKind {
    pub const fn name(self) -> &'static str {
        match self {
            Self::Euclidean => "euclidean",
            Self::Correlation => "correlation",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "euclidean" => Some(Self::Euclidean),
            "correlation" => Some(Self::Correlation),
            _ => None,
        }
    }

    pub fn compute(self, x: &DataMatrix) -> Result<CondensedMatrix> {
        match self {
            Self::Euclidean => Ok(euclidean_dissimilarity(x)),
            Self::Correlation => correlation_dissimilarity(x),
        }
    }
}

pub fn euclidean_dissimilarity(x: &DataMatrix) -> CondensedMatrix {
    CondensedMatrix::from_fn(x.rows(), |i, j| {
        let ss: f64 = x
            .row(i)
            .iter()
            .zip(x.row(j))
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        libm::sqrt(ss)
    })
}

pub fn correlation_dissimilarity(x: &DataMatrix) -> Result<CondensedMatrix> {
    if x.cols() < 2 {
        return Err(Error::Shape {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let p = x.cols() as f64;
    let cols = x.cols();
    let mut centered = Vec::with_capacity(x.values().len());
    let mut norms = Vec::with_capacity(x.rows());
    for (i, row) in x.iter_rows().enumerate() {
        if row.iter().all(|&v| v == row[0]) {
            return Err(Error::ZeroVarianceRow(i));
        }
        let mean = row.iter().sum::<f64>() / p;
        let start = centered.len();
        centered.extend(row.iter().map(|v| v - mean));
        norms.push(libm::sqrt(dot(&centered[start..], &centered[start..])));
    }
    // cosine distance of the centered rows
    Ok(CondensedMatrix::from_fn(x.rows(), |i, j| {
        let a = &centered[i * cols..(i + 1) * cols];
        let b = &centered[j * cols..(j + 1) * cols];
        let r = dot(a, b) / (norms[i] * norms[j]);
        1.0 - r.clamp(-1.0, 1.0)
    }))
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |s, (u, v)| s + u * v)
}
