//! Branching embedding (BE) of dendrograms into the plane.
//!
//! The crate is `no_std` and only needs `alloc`. It contains everything that
//! is pure computation:
//!
//! * [`dendrogram`]: the merge-table tree model, validation, cophenetic and
//!   kinship matrices, and leaf order.
//! * [`merge_table`]: the plain-text merge-table format.
//! * [`data`] and [`linkage`]: dissimilarities and agglomerative clustering
//!   (single, complete, average, Ward) using Lance–Williams updates, plus a
//!   definition-based reference implementation.
//! * [`embed`]: the top-down division process that assigns a 2D position to
//!   every leaf, and the straight-line embedding for single linkage.
//! * [`metrics`]: reclustering of an embedding and the cophenetic / kinship
//!   correlations `r_c` and `r_k`.
//! * [`datasets`]: seeded generators (Gaussian matrices, blobs, S-curve) and
//!   min-max rescaling.
//!
//! File formats, the iris fixture, the benchmark harness and the CLI live in
//! the companion `bembed` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod condensed;
pub mod data;
pub mod datasets;
pub mod dendrogram;
pub mod embed;
mod error;
pub mod linkage;
pub mod merge_table;
pub mod metrics;
pub mod rng;

pub use condensed::CondensedMatrix;
pub use data::{DataMatrix, DissimilarityKind};
pub use dendrogram::{Dendrogram, MergeRecord};
pub use embed::{AngleStrategy, Embedding, SplitEvent};
pub use error::Error;
pub use linkage::{Algorithm, LinkageMethod};
pub use metrics::{EvalReport, Recluster};

pub type Result<T, E = Error> = core::result::Result<T, E>;
