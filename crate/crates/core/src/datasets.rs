//! Seeded synthetic data and preprocessing.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::data::DataMatrix;
use crate::dendrogram::{Dendrogram, MergeRecord};
use crate::rng::Rng;
use crate::{Error, Result};

/// Seed for one generator run. Repeated trials use `seed + trial`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSpec {
    pub seed: u64,
}

impl RngSpec {
    pub const fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub const fn trial(self, index: u64) -> Self {
        Self {
            seed: self.seed.wrapping_add(index),
        }
    }

    pub fn rng(self) -> Rng {
        Rng::new(self.seed)
    }
}

/// A data matrix with an optional class label per row.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledData {
    pub data: DataMatrix,
    pub labels: Option<Vec<i64>>,
}

impl LabeledData {
    pub fn new(data: DataMatrix, labels: Option<Vec<i64>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != data.rows() {
                return Err(Error::LengthMismatch(data.rows(), l.len()));
            }
        }
        Ok(Self { data, labels })
    }
}

/// `rows x cols` matrix of independent standard normal entries, filled row
/// by row.
pub fn gaussian_matrix(rows: usize, cols: usize, spec: RngSpec) -> Result<DataMatrix> {
    let mut rng = spec.rng();
    let values = (0..rows * cols).map(|_| rng.standard_normal()).collect();
    DataMatrix::new(rows, cols, values)
}

/// Standard deviations of the three blob components.
pub const BLOB_STDS: [f64; 3] = [0.5, 0.8, 1.0];
/// Blob centers are uniform in `[-BLOB_BOX, BLOB_BOX]^2`.
pub const BLOB_BOX: f64 = 10.0;

/// Three isotropic Gaussian blobs in the plane.
///
/// The `n` points are split as evenly as possible, earlier components taking
/// the remainder, and emitted component by component with the component
/// index as label.
pub fn blobs(n: usize, spec: RngSpec) -> Result<LabeledData> {
    if n < 3 {
        return Err(Error::Shape { rows: n, cols: 2 });
    }
    let mut rng = spec.rng();
    let centers: Vec<[f64; 2]> = (0..3)
        .map(|_| {
            let x = rng.uniform_in(-BLOB_BOX, BLOB_BOX);
            let y = rng.uniform_in(-BLOB_BOX, BLOB_BOX);
            [x, y]
        })
        .collect();
    let mut values = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(n);
    for (class, (center, std)) in centers.iter().zip(BLOB_STDS).enumerate() {
        let count = n / 3 + usize::from(class < n % 3);
        for _ in 0..count {
            values.push(center[0] + std * rng.standard_normal());
            values.push(center[1] + std * rng.standard_normal());
            labels.push(class as i64);
        }
    }
    LabeledData::new(DataMatrix::new(n, 2, values)?, Some(labels))
}

/// Points sampled uniformly over the S-shaped surface in 3D:
/// `t ~ U[-3π/2, 3π/2]`, `v ~ U[0, 2]`,
/// `(sin t, v, sign(t)(cos t - 1))`.
pub fn s_curve(n: usize, spec: RngSpec) -> Result<DataMatrix> {
    let mut rng = spec.rng();
    let mut values = Vec::with_capacity(3 * n);
    for _ in 0..n {
        let t = 3.0 * PI * (rng.uniform() - 0.5);
        let v = 2.0 * rng.uniform();
        let sign = if t < 0.0 { -1.0 } else { 1.0 };
        values.push(libm::sin(t));
        values.push(v);
        values.push(sign * (libm::cos(t) - 1.0));
    }
    DataMatrix::new(n, 3, values)
}

/// A random monotonic dendrogram over `n` leaves: repeatedly merges two
/// uniformly chosen active clusters at the larger child height plus a
/// `U[0, 1)` increment. Left/right order is random too.
pub fn random_dendrogram(n: usize, spec: RngSpec) -> Result<Dendrogram> {
    if n < 2 {
        return Err(Error::TooFewLeaves(n));
    }
    let mut rng = spec.rng();
    let mut active: Vec<usize> = (0..n).collect();
    let mut height = alloc::vec![0.0f64; 2 * n - 1];
    let mut size = alloc::vec![1usize; 2 * n - 1];
    let mut merges = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let pick = |rng: &mut Rng, len: usize| ((rng.uniform() * len as f64) as usize).min(len - 1);
        let a = active.swap_remove(pick(&mut rng, active.len()));
        let b = active.swap_remove(pick(&mut rng, active.len()));
        let id = n + k;
        height[id] = height[a].max(height[b]) + rng.uniform();
        size[id] = size[a] + size[b];
        merges.push(MergeRecord::new(a, b, height[id], size[id]));
        active.push(id);
    }
    Dendrogram::new(n, merges)
}

/// Rescales every column to `[0, 1]`.
pub fn rescale_minmax(x: &DataMatrix) -> Result<DataMatrix> {
    let cols = x.cols();
    let mut lo = alloc::vec![f64::INFINITY; cols];
    let mut hi = alloc::vec![f64::NEG_INFINITY; cols];
    for row in x.iter_rows() {
        for (j, &v) in row.iter().enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    if let Some(j) = (0..cols).find(|&j| hi[j] <= lo[j]) {
        return Err(Error::ConstantColumn(j));
    }
    let values = x
        .iter_rows()
        .flat_map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| (v - lo[j]) / (hi[j] - lo[j]))
                .collect::<Vec<_>>()
        })
        .collect();
    DataMatrix::new(x.rows(), cols, values)
}
