use alloc::string::String;

/// Everything that can go wrong inside the core crate.
///
/// Dendrogram validation errors carry the index of the offending merge
/// record; parse errors carry a 1-based line number.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a dendrogram needs at least 2 leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("expected {expected} merge records, got {found}")]
    RecordCount { expected: usize, found: usize },
    #[error("record {record}: node {node} is already a child of an earlier record")]
    DuplicateChild { record: usize, node: usize },
    #[error("record {record}: node {node} does not exist yet")]
    ForwardReference { record: usize, node: usize },
    #[error("record {record}: size {found} does not match the children's total {expected}")]
    SizeMismatch { record: usize, expected: usize, found: usize },
    #[error("record {record}: height is below the height of child node {child}")]
    NonMonotonic { record: usize, child: usize },
    #[error("record {record}: height must be a nonnegative finite number")]
    NegativeHeight { record: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("condensed matrix length {len} is not n(n-1)/2 for any n")]
    CondensedLength { len: usize },
    #[error("matrices have different sizes ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("data matrix shape {rows}x{cols} is invalid")]
    Shape { rows: usize, cols: usize },
    #[error("row {0} has zero variance")]
    ZeroVarianceRow(usize),
    #[error("column {0} is constant")]
    ConstantColumn(usize),
    #[error("correlation needs at least 3 pairs with nonzero variance")]
    ZeroVariance,
    #[error("fixed angle {0} is outside [0, 90] degrees")]
    InvalidAngle(f64),
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },
}
