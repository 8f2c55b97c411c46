//! Goodness of an embedding: recluster the 2D points and correlate the
//! resulting tree with the original one.
//!
//! By default the points are reclustered with Euclidean distance and the
//! caller's linkage. [`Recluster`] also allows the correlation
//! dissimilarity and the fast clustering routine, which is how tables built
//! from correlation-based trees are usually scored.

use crate::condensed::CondensedMatrix;
use crate::data::{correlation_dissimilarity, euclidean_dissimilarity, DataMatrix, DissimilarityKind};
use crate::dendrogram::Dendrogram;
use crate::embed::{AngleStrategy, Embedding};
use crate::linkage::{Algorithm, LinkageMethod};
use crate::{Error, Result};

/// Pearson correlation over the above-diagonal entries of two matrices.
pub fn pearson_upper(a: &CondensedMatrix, b: &CondensedMatrix) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch(a.n(), b.n()));
    }
    let (xs, ys) = (a.values(), b.values());
    if xs.len() < 2 {
        return Err(Error::ZeroVariance);
    }
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// How the embedded points are clustered again.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Recluster {
    pub linkage: LinkageMethod,
    pub dissimilarity: DissimilarityKind,
    pub algorithm: Algorithm,
}

impl Recluster {
    /// Euclidean distance, generic algorithm.
    pub const fn euclidean(linkage: LinkageMethod) -> Self {
        Self {
            linkage,
            dissimilarity: DissimilarityKind::Euclidean,
            algorithm: Algorithm::Generic,
        }
    }

    pub const fn with_dissimilarity(mut self, kind: DissimilarityKind) -> Self {
        self.dissimilarity = kind;
        self
    }

    pub const fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }
}

/// Euclidean dissimilarity of the embedded points, clustered with `method`.
pub fn convert_dendrogram(coords: &Embedding, method: LinkageMethod) -> Result<Dendrogram> {
    convert_dendrogram_with(coords, &Recluster::euclidean(method))
}

pub fn convert_dendrogram_with(coords: &Embedding, recluster: &Recluster) -> Result<Dendrogram> {
    if coords.len() < 2 {
        return Err(Error::TooFewLeaves(coords.len()));
    }
    let flat = coords.coords().iter().flat_map(|p| *p).collect();
    let points = DataMatrix::new(coords.len(), 2, flat)?;
    let d = match recluster.dissimilarity {
        DissimilarityKind::Euclidean => euclidean_dissimilarity(&points),
        DissimilarityKind::Correlation => correlation_dissimilarity(&points)?,
    };
    Ok(recluster.algorithm.run(&d, recluster.linkage))
}

/// Correlations between an original dendrogram and the one rebuilt from an
/// embedding of it, with whatever context the caller knows about.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Cophenetic correlation.
    pub r_c: f64,
    /// Kinship correlation.
    pub r_k: f64,
    pub converted_linkage: LinkageMethod,
    pub converted_dissimilarity: DissimilarityKind,
    pub original_linkage: Option<LinkageMethod>,
    pub dissimilarity: Option<DissimilarityKind>,
    pub strategy: Option<AngleStrategy>,
}

impl EvalReport {
    pub fn with_original(mut self, linkage: LinkageMethod, dissimilarity: DissimilarityKind) -> Self {
        self.original_linkage = Some(linkage);
        self.dissimilarity = Some(dissimilarity);
        self
    }

    pub fn with_strategy(mut self, strategy: AngleStrategy) -> Self {
        self.strategy = Some(strategy);
        self
    }
}

/// `r_c` and `r_k` of `coords` against `original`, reclustering the points
/// with Euclidean distance and `converted_method`.
pub fn evaluate_embedding(
    original: &Dendrogram,
    coords: &Embedding,
    converted_method: LinkageMethod,
) -> Result<EvalReport> {
    evaluate_embedding_with(original, coords, &Recluster::euclidean(converted_method))
}

pub fn evaluate_embedding_with(
    original: &Dendrogram,
    coords: &Embedding,
    recluster: &Recluster,
) -> Result<EvalReport> {
    if coords.len() != original.n_leaves() {
        return Err(Error::CoordinateCount {
            expected: original.n_leaves(),
            found: coords.len(),
        });
    }
    let converted = convert_dendrogram_with(coords, recluster)?;
    let r_c = pearson_upper(&original.cophenetic(), &converted.cophenetic())?;
    let r_k = pearson_upper(&original.kinship(), &converted.kinship())?;
    Ok(EvalReport {
        r_c,
        r_k,
        converted_linkage: recluster.linkage,
        converted_dissimilarity: recluster.dissimilarity,
        original_linkage: None,
        dissimilarity: None,
        strategy: None,
    })
}
