//! Data → dendrogram → embedding → scores, as used by the CLI and the case
//! studies.

use bembed_core::embed::branching_embed;
use bembed_core::metrics::evaluate_embedding_with;
use bembed_core::{
    Algorithm, AngleStrategy, DataMatrix, Dendrogram, DissimilarityKind, Embedding, EvalReport,
    LinkageMethod, Recluster,
};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pipeline {
    pub dissimilarity: DissimilarityKind,
    pub linkage: LinkageMethod,
    pub strategy: AngleStrategy,
    /// Linkage for the converted dendrogram; `None` reuses `linkage`.
    pub converted_linkage: Option<LinkageMethod>,
    /// Dissimilarity between embedded points; `None` reuses `dissimilarity`.
    pub converted_dissimilarity: Option<DissimilarityKind>,
    pub algorithm: Algorithm,
}

impl Pipeline {
    pub fn new(dissimilarity: DissimilarityKind, linkage: LinkageMethod, strategy: AngleStrategy) -> Self {
        Pipeline {
            dissimilarity,
            linkage,
            strategy,
            converted_linkage: None,
            converted_dissimilarity: None,
            algorithm: Algorithm::Fast,
        }
    }

    pub fn converted_linkage(mut self, m: LinkageMethod) -> Self {
        self.converted_linkage = Some(m);
        self
    }

    pub fn converted_dissimilarity(mut self, k: DissimilarityKind) -> Self {
        self.converted_dissimilarity = Some(k);
        self
    }

    pub fn algorithm(mut self, a: Algorithm) -> Self {
        self.algorithm = a;
        self
    }

    pub fn recluster(&self) -> Recluster {
        Recluster::euclidean(self.converted_linkage.unwrap_or(self.linkage))
            .with_dissimilarity(self.converted_dissimilarity.unwrap_or(self.dissimilarity))
            .with_algorithm(self.algorithm)
    }

    pub fn cluster(&self, x: &DataMatrix) -> Result<Dendrogram> {
        let d = self.dissimilarity.compute(x)?;
        Ok(self.algorithm.run(&d, self.linkage))
    }

    pub fn run(&self, x: &DataMatrix) -> Result<PipelineOutput> {
        let original = self.cluster(x)?;
        let (embedding, report) = embed_and_score(&original, &self.strategy, &self.recluster())?;
        let report = report.with_original(self.linkage, self.dissimilarity);
        Ok(PipelineOutput { original, embedding, report })
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub original: Dendrogram,
    pub embedding: Embedding,
    pub report: EvalReport,
}

pub fn embed_and_score(
    original: &Dendrogram,
    strategy: &AngleStrategy,
    recluster: &Recluster,
) -> Result<(Embedding, EvalReport)> {
    let embedding = branching_embed(original, strategy)?;
    let report = evaluate_embedding_with(original, &embedding, recluster)?.with_strategy(*strategy);
    Ok((embedding, report))
}
